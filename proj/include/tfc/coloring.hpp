#pragma once

// Degree peeling and the degree-threshold edge partition, together with the
// bounded-degree colourers they bottom out in.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "tfc/bounds.hpp"
#include "tfc/error.hpp"
#include "tfc/graph.hpp"
#include "tfc/lists.hpp"
#include "tfc/random.hpp"
#include "tfc/trace.hpp"

namespace tfc {

// Greedy DSATUR: repeatedly colour the uncoloured vertex with the most
// distinct neighbouring colours (ties: larger degree, then least id) with the
// least colour absent from its neighbourhood. Uses at most Δ+1 colours.
inline Coloring dsatur(const Graph& g) {
  const std::size_t n = g.order();
  Coloring out;
  out.colors.assign(n, 0);
  if (n == 0) return out;

  constexpr Color kUncoloured = std::numeric_limits<Color>::max();
  std::vector<Color> color(n, kUncoloured);
  std::vector<std::unordered_set<Color>> seen(n);
  // key: (-saturation, -degree, id)
  using Key = std::tuple<std::int64_t, std::int64_t, Vertex>;
  std::set<Key> queue;
  for (Vertex v = 0; v < n; ++v) queue.insert({0, -std::int64_t(g.degree(v)), v});

  std::vector<std::uint8_t> blocked;
  std::size_t palette = 0;
  while (!queue.empty()) {
    const Vertex v = std::get<2>(*queue.begin());
    queue.erase(queue.begin());
    blocked.assign(g.degree(v) + 1, 0);
    for (Vertex u : g.neighbors(v)) {
      if (color[u] != kUncoloured && color[u] < blocked.size()) blocked[color[u]] = 1;
    }
    Color c = 0;
    while (blocked[c]) ++c;
    color[v] = c;
    palette = std::max(palette, std::size_t(c) + 1);
    for (Vertex u : g.neighbors(v)) {
      if (color[u] != kUncoloured) continue;
      if (seen[u].insert(c).second) {
        queue.erase({-std::int64_t(seen[u].size() - 1), -std::int64_t(g.degree(u)), u});
        queue.insert({-std::int64_t(seen[u].size()), -std::int64_t(g.degree(u)), u});
      }
    }
  }
  out.colors = std::move(color);
  out.palette_size = palette;
  return out;
}

struct SearchStats {
  std::uint64_t steps = 0;
  std::uint64_t restarts = 0;
};

inline std::uint64_t default_budget(std::size_t n, std::size_t list_size) {
  return std::max<std::uint64_t>(1, 200ULL * n * std::max<std::size_t>(list_size, 1));
}

// Min-conflicts local search for a proper L-colouring. Starts from a seeded
// random assignment drawn from the lists, then repeatedly picks a uniformly
// random conflicted vertex and moves it to a list colour with the fewest
// conflicting neighbours (uniform among ties). Restarts from a fresh random
// assignment every budget/10 steps and gives up after budget steps. An empty
// result is not a proof of non-colourability.
inline std::optional<Coloring> min_conflicts_list_color(const Graph& g, const ListAssignment& lists,
                                                        std::uint64_t budget, Seed seed,
                                                        SearchStats* stats = nullptr) {
  const std::size_t n = g.order();
  if (lists.size() != n) throw InvalidParameter("list assignment size mismatch");
  for (Vertex v = 0; v < n; ++v) {
    if (lists[v].empty()) throw EmptyList("vertex " + std::to_string(v) + " has an empty list");
  }
  Coloring out;
  out.palette_size = lists.color_bound();
  if (n == 0) return out;

  const std::uint64_t restart_every = std::max<std::uint64_t>(1, budget / 10);
  Rng rng(seed);
  std::vector<Color> assign(n);
  std::vector<std::uint32_t> conflicts(n);
  // indexable set of conflicted vertices for uniform picks
  std::vector<Vertex> conflicted;
  constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> where(n, kAbsent);
  auto mark = [&](Vertex v) {
    if (where[v] == kAbsent) {
      where[v] = conflicted.size();
      conflicted.push_back(v);
    }
  };
  auto unmark = [&](Vertex v) {
    if (where[v] == kAbsent) return;
    const Vertex last = conflicted.back();
    conflicted[where[v]] = last;
    where[last] = where[v];
    conflicted.pop_back();
    where[v] = kAbsent;
  };
  auto restart = [&] {
    for (Vertex v = 0; v < n; ++v) assign[v] = lists[v][rng.below(lists[v].size())];
    conflicted.clear();
    std::fill(where.begin(), where.end(), kAbsent);
    for (Vertex v = 0; v < n; ++v) {
      std::uint32_t k = 0;
      for (Vertex u : g.neighbors(v)) k += assign[u] == assign[v];
      conflicts[v] = k;
      if (k > 0) mark(v);
    }
  };

  restart();
  std::vector<std::uint32_t> tally;
  std::uint64_t step = 0;
  std::uint64_t since_restart = 0;
  while (true) {
    if (conflicted.empty()) {
      if (stats) stats->steps = step;
      out.colors = assign;
      return out;
    }
    if (step >= budget) break;
    if (since_restart == restart_every) {
      restart();
      since_restart = 0;
      if (stats) ++stats->restarts;
      continue;
    }
    ++step;
    ++since_restart;
    const Vertex v = conflicted[rng.below(conflicted.size())];
    const auto& list = lists[v];
    tally.assign(list.size(), 0);
    for (Vertex u : g.neighbors(v)) {
      auto it = std::lower_bound(list.begin(), list.end(), assign[u]);
      if (it != list.end() && *it == assign[u]) ++tally[std::size_t(it - list.begin())];
    }
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    std::size_t choice = 0;
    std::uint64_t ties = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (tally[i] < best) {
        best = tally[i];
        choice = i;
        ties = 1;
      } else if (tally[i] == best && rng.below(++ties) == 0) {
        choice = i;
      }
    }
    const Color old_color = assign[v];
    const Color new_color = list[choice];
    if (new_color == old_color) continue;
    assign[v] = new_color;
    conflicts[v] = best;
    if (best == 0) unmark(v);
    for (Vertex u : g.neighbors(v)) {
      if (assign[u] == old_color) {
        if (--conflicts[u] == 0) unmark(u);
      } else if (assign[u] == new_color) {
        if (conflicts[u]++ == 0) mark(u);
      }
    }
  }
  if (stats) stats->steps = step;
  return std::nullopt;
}

// q-colouring attempt for a graph of bounded degree. DSATUR when q > Δ
// (never fails), otherwise min-conflicts with lists {0..q-1}.
inline std::optional<Coloring> bounded_degree_color(const Graph& g, std::size_t q, Seed seed,
                                                    std::uint64_t budget = 0) {
  if (q < 1) throw InvalidParameter("target palette must be >= 1");
  if (g.order() == 0) return Coloring{{}, 0};
  if (q >= max_degree(g).degree + 1) return dsatur(g);
  const std::uint64_t steps = budget ? budget : default_budget(g.order(), q);
  auto found = min_conflicts_list_color(g, ListAssignment::uniform(g.order(), q), steps, seed);
  if (found) found->palette_size = q;
  return found;
}

struct PeelResult {
  Coloring coloring;
  PeelTrace trace;
  std::size_t peel_colors = 0;
  std::size_t base_colors = 0;
};

// Base colourer for the residual low-degree graph: returns nullopt when it
// cannot colour within its own budget.
using BaseColorer = std::function<std::optional<Coloring>(const Graph&)>;

inline BaseColorer dsatur_base() {
  return [](const Graph& g) -> std::optional<Coloring> { return dsatur(g); };
}

// Degree peeling. While the current graph has more than base_n vertices and
// a vertex of degree above sqrt(n ln n), the neighbourhood of the first such
// maximum-degree vertex becomes one fresh colour class and is deleted. The
// remainder goes to the base colourer on a disjoint palette placed after the
// peel colours.
inline PeelResult peel_and_color(const Graph& g, const SlackConfig& cfg,
                                 const BaseColorer& base = dsatur_base()) {
  require_triangle_free(g);
  PeelResult result;
  result.coloring.colors.assign(g.order(), 0);

  Graph current = g;
  std::vector<Vertex> to_original(g.order());
  for (Vertex v = 0; v < g.order(); ++v) to_original[v] = v;
  std::vector<std::uint8_t> coloured(g.order(), 0);

  while (current.order() > cfg.base_n && current.order() >= 2) {
    const auto top = max_degree(current);
    const double threshold = peel_threshold(double(current.order()));
    if (!(double(top.degree) > threshold)) break;
    const auto peeled = neighborhood(current, top.vertex);
    if (!is_independent(current, peeled)) {
      throw NotTriangleFree("peeled neighbourhood is not independent");
    }
    const auto color = static_cast<Color>(result.trace.size());
    for (Vertex v : peeled.members()) {
      result.coloring.colors[to_original[v]] = color;
      coloured[to_original[v]] = 1;
    }
    result.trace.push_back(
        {to_original[top.vertex], color, top.degree, current.order(), threshold});
    auto next = delete_vertices(current, peeled);
    std::vector<Vertex> remap(next.new_to_old.size());
    for (std::size_t i = 0; i < remap.size(); ++i) remap[i] = to_original[next.new_to_old[i]];
    to_original = std::move(remap);
    current = std::move(next.graph);
  }

  result.peel_colors = result.trace.size();
  auto rest = base(current);
  if (!rest) {
    throw BaseColorerFailed("base colourer failed on " + std::to_string(current.order()) +
                            "-vertex remainder");
  }
  result.base_colors = rest->palette_size;
  for (Vertex v = 0; v < current.order(); ++v) {
    result.coloring.colors[to_original[v]] = Color(result.peel_colors + rest->colors[v]);
  }
  result.coloring.palette_size = result.peel_colors + result.base_colors;
  return result;
}

struct PartitionReport {
  double threshold = 0.0;             // d
  std::size_t low_count = 0;          // |V1|
  std::size_t high_count = 0;         // |V2|
  std::size_t high_cap = 0;           // floor(2m / d)
  std::size_t low_max_degree = 0;     // max (colour-)degree over V1
  std::size_t low_colors = 0;
  std::size_t high_colors = 0;
  std::size_t low_target = 0;         // palette asked of the bounded-degree colourer
  bool low_fallback = false;          // bounded-degree colourer failed, DSATUR used
};

struct EdgePartitionResult {
  Coloring coloring;
  PeelTrace trace;
  PartitionReport report;
};

// Degree-threshold partition for the edge bound. V1 = {deg <= d} with
// d = ((m ln m)/3)^(1/3) is coloured by the bounded-degree colourer aiming
// at ceil((1+eps) d / ln d) colours (DSATUR if that fails); V2 has at most
// 2m/d vertices and is coloured by degree peeling on a disjoint palette.
// Graphs with m < 3 have no defined threshold and are coloured by DSATUR
// as a single V1 block.
inline EdgePartitionResult edge_partition_color(const Graph& g, const SlackConfig& cfg,
                                                Seed seed = {}) {
  require_triangle_free(g);
  EdgePartitionResult result;
  auto& rep = result.report;
  const std::size_t m = g.size();
  const double d = m >= 3 ? edge_partition_threshold(double(m))
                          : std::numeric_limits<double>::infinity();
  rep.threshold = d;

  VertexSet low(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    if (double(g.degree(v)) <= d) {
      low.insert(v);
      rep.low_max_degree = std::max(rep.low_max_degree, g.degree(v));
    }
  }
  rep.low_count = low.count();
  rep.high_count = g.order() - rep.low_count;
  rep.high_cap = m >= 3 ? static_cast<std::size_t>(std::floor(2.0 * double(m) / d)) : 0;
  if (double(rep.low_max_degree) > d || rep.high_count > rep.high_cap) {
    throw std::logic_error("edge partition caps violated");
  }

  auto low_part = induced_subgraph(g, low);
  Coloring low_coloring;
  if (m >= 3 && d > std::numbers::e) {
    const double target = std::ceil((1.0 + cfg.eps) * d / std::log(d));
    rep.low_target = static_cast<std::size_t>(std::max(1.0, target));
    auto found = bounded_degree_color(low_part.graph, rep.low_target, seed, cfg.budget);
    if (found) {
      low_coloring = std::move(*found);
    } else {
      rep.low_fallback = true;
      low_coloring = dsatur(low_part.graph);
    }
  } else {
    low_coloring = dsatur(low_part.graph);
  }

  auto high_part = delete_vertices(g, low);
  auto high = peel_and_color(high_part.graph, cfg);

  rep.low_colors = low_coloring.palette_size;
  rep.high_colors = high.coloring.palette_size;
  result.coloring.colors.assign(g.order(), 0);
  for (std::size_t i = 0; i < low_part.new_to_old.size(); ++i) {
    result.coloring.colors[low_part.new_to_old[i]] = low_coloring.colors[i];
  }
  for (std::size_t i = 0; i < high_part.new_to_old.size(); ++i) {
    result.coloring.colors[high_part.new_to_old[i]] =
        Color(rep.low_colors + high.coloring.colors[i]);
  }
  result.coloring.palette_size = rep.low_colors + rep.high_colors;
  for (auto rec : high.trace) {
    rec.pivot = high_part.new_to_old[rec.pivot];
    rec.color = Color(rec.color + rep.low_colors);
    result.trace.push_back(rec);
  }
  return result;
}

}  // namespace tfc
