#pragma once

// Colouring graphs embedded on a surface of declared genus: strip low-degree
// vertices, colour the core with the edge-regime partition, re-add greedily.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tfc/bounds.hpp"
#include "tfc/coloring.hpp"
#include "tfc/error.hpp"
#include "tfc/graph.hpp"
#include "tfc/list_coloring.hpp"
#include "tfc/lists.hpp"
#include "tfc/random.hpp"

namespace tfc {

struct GenusResult {
  std::optional<Coloring> coloring;  // empty only in list mode, when a list is exhausted
  PeelTrace trace;
  PartitionReport core_report;
  double degree_threshold = 0.0;
  std::size_t removed = 0;     // vertices stripped before colouring the core
  std::size_t core_order = 0;
  std::size_t target = 0;      // ceil of the genus bound at max(genus, 2)
  std::size_t extensions = 0;  // re-added vertices that needed a colour >= target
};

namespace detail {

inline void check_genus_input(const Graph& g, std::size_t genus, Surface surface) {
  require_triangle_free(g);
  if (g.order() == 0) return;
  const auto cap = genus_edge_cap(g.order(), genus, surface);
  if (static_cast<std::int64_t>(g.size()) > cap) {
    throw EdgeCapViolated(std::to_string(g.size()) + " edges exceed the cap " +
                          std::to_string(cap) + " for declared genus " + std::to_string(genus));
  }
}

// Repeatedly removes a minimum-degree vertex (least id on ties) while the
// minimum degree is at most d. Returns the removal order.
inline std::vector<Vertex> strip_low_degree(const Graph& g, double d) {
  const std::size_t n = g.order();
  std::vector<std::size_t> degree(n);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    queue.insert({degree[v], v});
  }
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<Vertex> order;
  while (!queue.empty() && double(queue.begin()->first) <= d) {
    const Vertex v = queue.begin()->second;
    queue.erase(queue.begin());
    alive[v] = 0;
    order.push_back(v);
    for (Vertex u : g.neighbors(v)) {
      if (!alive[u]) continue;
      queue.erase({degree[u], u});
      queue.insert({--degree[u], u});
    }
  }
  return order;
}

inline VertexSet core_of(std::size_t n, const std::vector<Vertex>& removed) {
  VertexSet core(n);
  for (Vertex v = 0; v < n; ++v) core.insert(v);
  for (Vertex v : removed) core.erase(v);
  return core;
}

}  // namespace detail

// Smallest orientable genus whose edge cap admits the graph.
inline std::size_t least_consistent_genus(const Graph& g) {
  const auto excess = static_cast<std::int64_t>(g.size()) - 2 * static_cast<std::int64_t>(g.order()) + 4;
  return excess <= 0 ? 0 : static_cast<std::size_t>((excess + 3) / 4);
}

// Chromatic mode. Every stripped vertex had at most d coloured neighbours
// when it is re-added, so it takes the least colour not on them.
inline GenusResult genus_color(const Graph& g, std::size_t genus, const SlackConfig& cfg,
                               Seed seed = {}, Surface surface = Surface::Orientable) {
  detail::check_genus_input(g, genus, surface);
  const double eff = std::max(effective_genus(double(genus), surface), 2.0);
  GenusResult result;
  result.degree_threshold = genus_degree_threshold(eff);
  result.target = static_cast<std::size_t>(std::ceil(genus_chi_bound(eff, cfg)));

  const std::size_t n = g.order();
  const auto removed = detail::strip_low_degree(g, result.degree_threshold);
  result.removed = removed.size();
  const auto core = induced_subgraph(g, detail::core_of(n, removed));
  result.core_order = core.graph.order();

  std::vector<Color> colors(n, 0);
  std::vector<std::uint8_t> coloured(n, 0);
  std::size_t palette = 0;
  if (core.graph.order() > 0) {
    auto inner = edge_partition_color(core.graph, cfg, seed);
    for (std::size_t i = 0; i < core.new_to_old.size(); ++i) {
      colors[core.new_to_old[i]] = inner.coloring.colors[i];
      coloured[core.new_to_old[i]] = 1;
    }
    palette = inner.coloring.palette_size;
    result.core_report = inner.report;
    for (auto rec : inner.trace) {
      rec.pivot = core.new_to_old[rec.pivot];
      result.trace.push_back(rec);
    }
  }

  const std::size_t limit = std::max(result.target, palette);
  std::vector<std::uint8_t> blocked;
  for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
    const Vertex v = *it;
    blocked.assign(g.degree(v) + 1, 0);
    for (Vertex u : g.neighbors(v)) {
      if (coloured[u] && colors[u] < blocked.size()) blocked[colors[u]] = 1;
    }
    Color c = 0;
    while (blocked[c]) ++c;
    if (c >= limit) ++result.extensions;
    colors[v] = c;
    coloured[v] = 1;
    palette = std::max<std::size_t>(palette, c + 1);
  }
  result.coloring = Coloring{std::move(colors), palette};
  return result;
}

// List mode: the core goes to the list edge partition and re-added vertices
// take their least list colour not on a coloured neighbour.
inline GenusResult genus_color(const Graph& g, std::size_t genus, const ListAssignment& lists,
                               const SlackConfig& cfg, Seed seed = {},
                               Surface surface = Surface::Orientable) {
  detail::check_genus_input(g, genus, surface);
  const std::size_t n = g.order();
  if (lists.size() != n) throw InvalidParameter("list assignment size mismatch");
  const double eff = std::max(effective_genus(double(genus), surface), 2.0);
  GenusResult result;
  result.degree_threshold = genus_degree_threshold(eff);
  result.target = static_cast<std::size_t>(std::ceil(genus_list_bound(eff, cfg)));

  const auto removed = detail::strip_low_degree(g, result.degree_threshold);
  result.removed = removed.size();
  const auto core = induced_subgraph(g, detail::core_of(n, removed));
  result.core_order = core.graph.order();

  std::vector<Color> colors(n, 0);
  std::vector<std::uint8_t> coloured(n, 0);
  if (core.graph.order() > 0) {
    auto inner = list_edge_partition_color(core.graph, lists.restrict(core.new_to_old), cfg, seed);
    result.core_report = inner.report;
    if (!inner.coloring) return result;
    for (std::size_t i = 0; i < core.new_to_old.size(); ++i) {
      colors[core.new_to_old[i]] = inner.coloring->colors[i];
      coloured[core.new_to_old[i]] = 1;
    }
    for (auto rec : inner.trace) {
      rec.pivot = core.new_to_old[rec.pivot];
      result.trace.push_back(rec);
    }
  }

  for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
    const Vertex v = *it;
    std::optional<Color> pick;
    for (Color c : lists[v]) {
      const auto nb = g.neighbors(v);
      if (std::none_of(nb.begin(), nb.end(), [&](Vertex u) { return coloured[u] && colors[u] == c; })) {
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
