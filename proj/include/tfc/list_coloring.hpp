#pragma once

// List colouring: colour-degree peeling, random palette splitting and the
// colour-degree partition behind the list edge bound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "tfc/bounds.hpp"
#include "tfc/coloring.hpp"
#include "tfc/error.hpp"
#include "tfc/graph.hpp"
#include "tfc/lists.hpp"
#include "tfc/random.hpp"
#include "tfc/trace.hpp"

namespace tfc {

struct ListPeelOptions {
  // Require |L(v)| >= ceil(g(n)) up front. Internal callers whose lists obey
  // a different floor switch this off.
  bool enforce_list_floor = true;
};

struct ListPeelResult {
  std::optional<Coloring> coloring;
  PeelTrace trace;
};

inline std::uint64_t resolve_budget(const SlackConfig& cfg, std::size_t n, std::size_t list_size) {
  return cfg.budget ? cfg.budget : default_budget(n, list_size);
}

// Colour-degree peeling. While more than base_n vertices remain and some
// deg_L(v, c) exceeds (sqrt 2 / 4) sqrt(n ln n), the maximising pair (least
// (v, c) on ties) colours every neighbour of v holding c with c, those
// vertices are deleted and c is struck from every remaining list. The rest is
// handed to min-conflicts with the shrunken lists.
inline ListPeelResult list_peel_and_color(const Graph& g, const ListAssignment& lists,
                                          const SlackConfig& cfg, Seed seed = {},
                                          ListPeelOptions options = {}) {
  require_triangle_free(g);
  const std::size_t n = g.order();
  if (lists.size() != n) throw InvalidParameter("list assignment size mismatch");
  if (options.enforce_list_floor && n >= 3) {
    const auto need = static_cast<std::size_t>(std::ceil(vertex_list_bound(double(n), cfg)));
    if (lists.min_size() < need) {
      throw ListsTooSmall("lists of size " + std::to_string(lists.min_size()) +
                          " below required " + std::to_string(need));
    }
  }

  ListPeelResult result;
  std::vector<Color> colors(n, 0);
  ColorDegreeIndex index(g, lists);
  std::vector<std::uint8_t> in_peel(n, 0);

  while (index.alive_count() > cfg.base_n && index.alive_count() >= 2) {
    const double threshold = list_peel_threshold(double(index.alive_count()));
    Vertex pivot = 0;
    std::uint32_t slot = 0;
    std::uint32_t best = 0;
    bool found = false;
    for (Vertex v = 0; v < n; ++v) {
      if (!index.alive(v)) continue;
      for (auto s : index.slots(v)) {
        if (!found || index.count(v, s) > best) {
          best = index.count(v, s);
          pivot = v;
          slot = s;
          found = true;
        }
      }
    }
    if (!found || !(double(best) > threshold)) break;

    std::vector<Vertex> peeled;
    for (Vertex u : g.neighbors(pivot)) {
      if (index.alive(u) && index.has(u, slot)) peeled.push_back(u);
    }
    for (Vertex u : peeled) in_peel[u] = 1;
    for (Vertex u : peeled) {
      for (Vertex w : g.neighbors(u)) {
        if (in_peel[w]) throw NotTriangleFree("peeled colour class is not independent");
      }
    }
    for (Vertex u : peeled) in_peel[u] = 0;

    const Color c = index.color_at(slot);
    result.trace.push_back({pivot, c, peeled.size(), index.alive_count(), threshold});
    for (Vertex u : peeled) {
      colors[u] = c;
      index.delete_vertex(u);
    }
    for (Vertex x = 0; x < n; ++x) {
      if (index.alive(x)) index.remove_color(x, slot);
    }
  }

  VertexSet rest(n);
  for (Vertex v = 0; v < n; ++v) {
    if (index.alive(v)) rest.insert(v);
  }
  auto sub = induced_subgraph(g, rest);
  std::vector<std::vector<Color>> rest_lists(sub.new_to_old.size());
  for (std::size_t i = 0; i < rest_lists.size(); ++i) {
    rest_lists[i] = index.current_list(sub.new_to_old[i]);
    if (rest_lists[i].empty()) return result;
  }
  ListAssignment residual(std::move(rest_lists));
  auto base = min_conflicts_list_color(sub.graph, residual,
                                       resolve_budget(cfg, sub.graph.order(), residual.max_size()),
                                       seed);
  if (!base) return result;
  for (std::size_t i = 0; i < sub.new_to_old.size(); ++i) {
    colors[sub.new_to_old[i]] = base->colors[i];
  }
  result.coloring = Coloring{std::move(colors), lists.color_bound()};
  return result;
}

struct PaletteSplit {
  std::vector<Color> part1;  // chosen with probability 1/3 per colour
  std::vector<Color> part2;
};

// List-size requirement and per-part floors for edge count m:
//   k      = (1 + eps)^2 * 12 * 3^(2/3) * s
//   floor1 = (4 * 3^(2/3) + eps) * s
//   floor2 = (8 * 3^(2/3) + eps) * s       with s = m^(1/3) / (ln m)^(2/3).
struct SplitFloors {
  double k = 0.0;
  double floor1 = 0.0;
  double floor2 = 0.0;
  std::size_t need1 = 0;  // ceil(floor1): smallest passing |L1(v)|
  std::size_t need2 = 0;
};

inline SplitFloors split_floors(double m, double eps) {
  if (m < 3) throw OutOfDomain("palette split needs m >= 3");
  const double s = detail::edge_scale(m);
  const double c = std::pow(3.0, 2.0 / 3.0);
  SplitFloors f;
  f.k = (1.0 + eps) * (1.0 + eps) * 12.0 * c * s;
  f.floor1 = (4.0 * c + eps) * s;
  f.floor2 = (8.0 * c + eps) * s;
  f.need1 = static_cast<std::size_t>(std::ceil(f.floor1));
  f.need2 = static_cast<std::size_t>(std::ceil(f.floor2));
  return f;
}

// Chernoff estimate of the per-vertex probability that a single split misses
// a floor: 2 exp(-eps^2 k / 9) + 2 exp(-2 eps^2 k / 9).
inline double split_failure_estimate(double k, double eps) {
  return 2.0 * std::exp(-eps * eps * k / 9.0) + 2.0 * std::exp(-2.0 * eps * eps * k / 9.0);
}

// One random split: each colour of the sorted palette, in order, lands in
// part1 iff Rng(seed).below(3) == 0.
inline PaletteSplit split_once(const std::vector<Color>& palette, Seed seed) {
  Rng rng(seed);
  PaletteSplit split;
  for (Color c : palette) (rng.below(3) == 0 ? split.part1 : split.part2).push_back(c);
  return split;
}

inline std::size_t count_in(const std::vector<Color>& list, const std::vector<Color>& part) {
  std::size_t count = 0;
  auto it = part.begin();
  for (Color c : list) {
    it = std::lower_bound(it, part.end(), c);
    if (it == part.end()) break;
    if (*it == c) ++count;
  }
  return count;
}

// Number of vertices whose lists miss either floor under the split.
inline std::size_t floor_violations(const ListAssignment& lists, const PaletteSplit& split,
                                    const SplitFloors& floors) {
  std::size_t bad = 0;
  for (const auto& l : lists.lists()) {
    if (count_in(l, split.part1) < floors.need1 || count_in(l, split.part2) < floors.need2) ++bad;
  }
  return bad;
}

struct SplitOutcome {
  PaletteSplit split;
  std::size_t attempts = 0;
};

// Fresh splits (attempt i uses derive_seed(seed, i)) until both floors hold
// at every vertex. No deterministic fallback: an empty result after
// max_retries attempts is surfaced to the caller.
inline std::optional<SplitOutcome> split_palette(const ListAssignment& lists, double m, double eps,
                                                 Seed seed, std::size_t max_retries) {
  const auto floors = split_floors(m, eps);
  const auto need = static_cast<std::size_t>(std::ceil(floors.k));
  if (lists.min_size() < need) {
    throw ListsTooSmall("palette split needs lists of size >= " + std::to_string(need) +
                        ", smallest is " + std::to_string(lists.min_size()));
  }
  const auto palette = lists.palette();
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    auto split = split_once(palette, derive_seed(seed, attempt));
    if (floor_violations(lists, split, floors) == 0) return SplitOutcome{std::move(split), attempt + 1};
  }
  return std::nullopt;
}

struct ListEdgeResult {
  std::optional<Coloring> coloring;
  PeelTrace trace;
  PartitionReport report;
  std::size_t stripped = 0;  // vertices removed as degree 0/1 and re-added greedily
  std::size_t split_attempts = 0;
};

// Colour-degree partition for the list edge bound. Degree-0/1 vertices are
// stripped iteratively onto a stack. On the remaining core, V1 holds the
// vertices whose largest colour-degree is at most d = ((m ln m)/24)^(1/3)
// and V2 the rest (|V2| <= 2m/d). After a random palette split, G[V1] is
// coloured from L1 by min-conflicts and G[V2] from L2 by colour-degree
// peeling; stacked vertices are then popped and given their least list colour
// unused by coloured neighbours (at most one such neighbour each).
inline ListEdgeResult list_edge_partition_color(const Graph& g, const ListAssignment& lists,
                                                const SlackConfig& cfg, Seed seed = {}) {
  require_triangle_free(g);
  const std::size_t n = g.order();
  if (lists.size() != n) throw InvalidParameter("list assignment size mismatch");
  const std::size_t m = g.size();
  if (m >= 3) {
    const auto need = static_cast<std::size_t>(std::ceil(split_floors(double(m), cfg.eps).k));
    if (lists.min_size() < need) {
      throw ListsTooSmall("lists of size " + std::to_string(lists.min_size()) +
                          " below required " + std::to_string(need));
    }
  } else if (n > 0 && lists.min_size() == 0) {
    throw ListsTooSmall("empty list");
  }

  ListEdgeResult result;
  auto& rep = result.report;

  // strip vertices of degree <= 1
  std::vector<std::size_t> degree(n);
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<Vertex> stack;
  std::vector<Vertex> pending;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] <= 1) pending.push_back(v);
  }
  while (!pending.empty()) {
    const Vertex v = pending.back();
    pending.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    stack.push_back(v);
    for (Vertex u : g.neighbors(v)) {
      if (alive[u] && --degree[u] == 1) pending.push_back(u);
    }
  }
  result.stripped = stack.size();

  std::vector<Color> colors(n, 0);
  std::vector<std::uint8_t> coloured(n, 0);
  VertexSet core_set(n);
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) core_set.insert(v);
  }

  if (!core_set.empty()) {
    auto core = induced_subgraph(g, core_set);
    auto core_lists = lists.restrict(core.new_to_old);
    const double d = list_edge_partition_threshold(double(m));
    rep.threshold = d;

    VertexSet low(core.graph.order());
    {
      ColorDegreeIndex index(core.graph, core_lists);
      for (Vertex v = 0; v < core.graph.order(); ++v) {
        std::uint32_t top = 0;
        for (auto s : index.slots(v)) top = std::max(top, index.count(v, s));
        if (double(top) <= d) {
          low.insert(v);
          rep.low_max_degree = std::max<std::size_t>(rep.low_max_degree, top);
        }
      }
    }
    rep.low_count = low.count();
    rep.high_count = core.graph.order() - rep.low_count;
    rep.high_cap = static_cast<std::size_t>(std::floor(2.0 * double(m) / d));
    if (double(rep.low_max_degree) > d || rep.high_count > rep.high_cap) {
      throw std::logic_error("list edge partition caps violated");
    }

    auto split = split_palette(core_lists, double(m), cfg.eps, derive_seed(seed, 1),
                               cfg.max_split_retries);
    if (!split) {
      throw SplitFailed("no palette split met both floors after " +
                        std::to_string(cfg.max_split_retries) + " attempts");
    }
    result.split_attempts = split->attempts;

    auto low_part = induced_subgraph(core.graph, low);
    auto low_lists = core_lists.restrict(low_part.new_to_old, &split->split.part1);
    auto low_coloring = min_conflicts_list_color(
        low_part.graph, low_lists, resolve_budget(cfg, low_part.graph.order(), low_lists.max_size()),
        derive_seed(seed, 2));
    if (!low_coloring) return result;

    auto high_part = delete_vertices(core.graph, low);
    auto high_lists = core_lists.restrict(high_part.new_to_old, &split->split.part2);
    auto high = list_peel_and_color(high_part.graph, high_lists, cfg, derive_seed(seed, 3),
                                    ListPeelOptions{false});
    if (!high.coloring) return result;

    auto place = [&](const std::vector<Vertex>& to_core, const Coloring& c) {
      for (std::size_t i = 0; i < to_core.size(); ++i) {
        const Vertex v = core.new_to_old[to_core[i]];
        colors[v] = c.colors[i];
        coloured[v] = 1;
      }
    };
    place(low_part.new_to_old, *low_coloring);
    place(high_part.new_to_old, *high.coloring);
    rep.low_colors = colors_used(*low_coloring);
    rep.high_colors = colors_used(*high.coloring);
    for (auto rec : high.trace) {
      rec.pivot = core.new_to_old[high_part.new_to_old[rec.pivot]];
      result.trace.push_back(rec);
    }
  }

  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const Vertex v = *it;
    std::optional<Color> pick;
    for (Color c : lists[v]) {
      bool clash = false;
      for (Vertex u : g.neighbors(v)) {
        if (coloured[u] && colors[u] == c) {
          clash = true;
          break;
        }
      }
      if (!clash) {
        pick = c;
        break;
      }
    }
    if (!pick) return result;
    colors[v] = *pick;
    coloured[v] = 1;
  }
  result.coloring = Coloring{std::move(colors), lists.color_bound()};
  return result;
}

}  // namespace tfc
