#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tfc/error.hpp"

namespace tfc {

using Vertex = std::uint32_t;
using Color = std::uint32_t;

inline constexpr Vertex kRemoved = std::numeric_limits<Vertex>::max();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  auto operator<=>(const Edge&) const = default;
};

// Membership bitset over vertex ids 0..n-1.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return universe_; }

  bool contains(Vertex v) const {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1ULL) != 0;
  }

  void insert(Vertex v) {
    if (v >= universe_) {
      throw InvalidVertex("vertex " + std::to_string(v) + " outside set universe");
    }
    words_[v >> 6] |= 1ULL << (v & 63);
  }

  void erase(Vertex v) {
    if (v < universe_) words_[v >> 6] &= ~(1ULL << (v & 63));
  }

  std::size_t count() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(__builtin_popcountll(w));
    return total;
  }

  bool empty() const { return count() == 0; }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < universe_; ++v) {
      if (contains(v)) out.push_back(v);
    }
    return out;
  }

  VertexSet complement() const {
    VertexSet out(universe_);
    for (Vertex v = 0; v < universe_; ++v) {
      if (!contains(v)) out.insert(v);
    }
    return out;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Immutable simple undirected graph in compressed adjacency form. Neighbour
// lists are sorted ascending, which fixes iteration order everywhere.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  static Graph from_edge_list(std::size_t n, std::span<const Edge> edges) {
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const auto& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw InvalidGraph("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") out of range for n=" + std::to_string(n));
      }
      if (e.u == e.v) {
        throw InvalidGraph("self-loop at vertex " + std::to_string(e.u));
      }
      canon.push_back(e.u < e.v ? e : Edge{e.v, e.u});
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (const auto& e : canon) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : canon) g.targets_[fill[e.u]++] = e.v;
    for (const auto& e : canon) g.targets_[fill[e.v]++] = e.u;
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    }
    g.m_ = canon.size();
    return g;
  }

  static Graph from_edge_list(std::size_t n, std::initializer_list<Edge> edges) {
    return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  // Adjacency lists already sorted, symmetric and loop-free; used by surgery
  // routines that preserve canonical form.
  static Graph from_sorted_adjacency(const std::vector<std::vector<Vertex>>& adj) {
    Graph g;
    const std::size_t n = adj.size();
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + adj[v].size();
    g.targets_.reserve(g.offsets_[n]);
    for (const auto& row : adj) g.targets_.insert(g.targets_.end(), row.begin(), row.end());
    g.m_ = g.offsets_[n] / 2;
    return g;
  }

  std::size_t order() const { return offsets_.size() - 1; }
  std::size_t size() const { return m_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool adjacent(Vertex u, Vertex v) const {
    if (u >= order() || v >= order()) return false;
    auto row = neighbors(degree(u) <= degree(v) ? u : v);
    const Vertex other = degree(u) <= degree(v) ? v : u;
    return std::binary_search(row.begin(), row.end(), other);
  }

  // Sorted (u < v) edge list; from_edge_list of this is the identity.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < order(); ++u) {
      for (Vertex v : neighbors(u)) {
        if (u < v) out.push_back({u, v});
      }
    }
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::size_t m_ = 0;
};

struct Coloring {
  std::vector<Color> colors;
  std::size_t palette_size = 0;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

inline std::size_t colors_used(const Coloring& c) {
  std::vector<Color> sorted = c.colors;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

using Triangle = std::array<Vertex, 3>;

// Lexicographically least triangle (a < b < c), if any.
inline std::optional<Triangle> find_triangle(const Graph& g) {
  for (Vertex a = 0; a < g.order(); ++a) {
    auto na = g.neighbors(a);
    for (Vertex b : na) {
      if (b <= a) continue;
      auto nb = g.neighbors(b);
      auto ia = std::upper_bound(na.begin(), na.end(), b);
      auto ib = std::upper_bound(nb.begin(), nb.end(), b);
      while (ia != na.end() && ib != nb.end()) {
        if (*ia < *ib) {
          ++ia;
        } else if (*ib < *ia) {
          ++ib;
        } else {
          return Triangle{a, b, *ia};
        }
      }
    }
  }
  return std::nullopt;
}

inline bool is_triangle_free(const Graph& g) { return !find_triangle(g).has_value(); }

inline void require_triangle_free(const Graph& g) {
  if (auto t = find_triangle(g)) {
    throw NotTriangleFree("triangle (" + std::to_string((*t)[0]) + "," +
                          std::to_string((*t)[1]) + "," + std::to_string((*t)[2]) + ")");
  }
}

struct DegreeWitness {
  std::size_t degree = 0;
  Vertex vertex = 0;
};

inline DegreeWitness max_degree(const Graph& g) {
  if (g.order() == 0) throw EmptyGraph("max_degree of a graph with no vertices");
  DegreeWitness best{g.degree(0), 0};
  for (Vertex v = 1; v < g.order(); ++v) {
    if (g.degree(v) > best.degree) best = {g.degree(v), v};
  }
  return best;
}

inline VertexSet neighborhood(const Graph& g, Vertex v) {
  if (v >= g.order()) throw InvalidVertex("vertex " + std::to_string(v) + " out of range");
  VertexSet out(g.order());
  for (Vertex u : g.neighbors(v)) out.insert(u);
  return out;
}

// Induced subgraph on V \ removed. old_to_new maps deleted vertices to
// kRemoved and is order preserving on the survivors.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> old_to_new;
  std::vector<Vertex> new_to_old;
};

inline Subgraph delete_vertices(const Graph& g, const VertexSet& removed) {
  Subgraph out;
  const std::size_t n = g.order();
  out.old_to_new.assign(n, kRemoved);
  for (Vertex v = 0; v < n; ++v) {
    if (!removed.contains(v)) {
      out.old_to_new[v] = static_cast<Vertex>(out.new_to_old.size());
      out.new_to_old.push_back(v);
    }
  }
  std::vector<std::vector<Vertex>> adj(out.new_to_old.size());
  for (std::size_t i = 0; i < out.new_to_old.size(); ++i) {
    for (Vertex u : g.neighbors(out.new_to_old[i])) {
      if (out.old_to_new[u] != kRemoved) adj[i].push_back(out.old_to_new[u]);
    }
  }
  out.graph = Graph::from_sorted_adjacency(adj);
  return out;
}

inline Subgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  return delete_vertices(g, keep.complement());
}

inline bool is_independent(const Graph& g, const VertexSet& s) {
  for (Vertex u = 0; u < g.order(); ++u) {
    if (!s.contains(u)) continue;
    for (Vertex v : g.neighbors(u)) {
      if (s.contains(v)) return false;
    }
  }
  return true;
}

// Least violating edge (u < v, lexicographic), or nullopt when proper.
inline std::optional<Edge> validate_coloring(const Graph& g, const Coloring& c) {
  if (c.colors.size() != g.order()) {
    throw InvalidColoring("colouring has " + std::to_string(c.colors.size()) +
                          " entries for " + std::to_string(g.order()) + " vertices");
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (c.colors[v] >= c.palette_size) {
      throw InvalidColoring("vertex " + std::to_string(v) + " has colour " +
                            std::to_string(c.colors[v]) + " outside palette of size " +
                            std::to_string(c.palette_size));
    }
  }
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v && c.colors[u] == c.colors[v]) return Edge{u, v};
    }
  }
  return std::nullopt;
}

}  // namespace tfc
