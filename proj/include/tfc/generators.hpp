#pragma once

// Triangle-free instance generators. All randomized generators are pure
// functions of their parameters and Seed (see random.hpp for the stream
// definition).

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tfc/error.hpp"
#include "tfc/graph.hpp"
#include "tfc/random.hpp"

namespace tfc {

inline Graph empty_graph(std::size_t n) { return Graph::from_edge_list(n, std::span<const Edge>{}); }

inline Graph path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({Vertex(i - 1), Vertex(i)});
  return Graph::from_edge_list(n, edges);
}

inline Graph cycle(std::size_t n) {
  if (n < 3) throw InvalidParameter("cycle needs n >= 3, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({Vertex(i), Vertex((i + 1) % n)});
  return Graph::from_edge_list(n, edges);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.push_back({Vertex(u), Vertex(v)});
  }
  return Graph::from_edge_list(n, edges);
}

// Parts {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  if (a < 1 || b < 1) throw InvalidParameter("complete_bipartite needs a, b >= 1");
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < a; ++u) {
    for (std::size_t v = 0; v < b; ++v) edges.push_back({Vertex(u), Vertex(a + v)});
  }
  return Graph::from_edge_list(a + b, edges);
}

inline Graph star(std::size_t leaves) { return complete_bipartite(1, leaves); }

// Vertices 0..n-1 are the originals, n..2n-1 their shadows and 2n the apex.
inline Graph mycielskian(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<Edge> edges;
  edges.reserve(3 * g.size() + n);
  for (const auto& e : g.edges()) {
    edges.push_back(e);
    edges.push_back({e.u, Vertex(n + e.v)});
    edges.push_back({e.v, Vertex(n + e.u)});
  }
  for (std::size_t i = 0; i < n; ++i) edges.push_back({Vertex(n + i), Vertex(2 * n)});
  return Graph::from_edge_list(2 * n + 1, edges);
}

// K2 with the Mycielski construction applied depth times (depth 1 = C5,
// depth 2 = Grötzsch graph); chromatic number depth + 2.
inline Graph mycielski_family(std::size_t depth) {
  Graph g = complete(2);
  for (std::size_t i = 0; i < depth; ++i) g = mycielskian(g);
  return g;
}

inline Graph grotzsch() { return mycielski_family(2); }

// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
inline Graph petersen() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, Vertex((i + 1) % 5)});
    edges.push_back({i, Vertex(i + 5)});
    edges.push_back({Vertex(5 + i), Vertex(5 + (i + 2) % 5)});
  }
  return Graph::from_edge_list(10, edges);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  auto edges = a.edges();
  const auto shift = static_cast<Vertex>(a.order());
  for (const auto& e : b.edges()) edges.push_back({Vertex(e.u + shift), Vertex(e.v + shift)});
  return Graph::from_edge_list(a.order() + b.order(), edges);
}

inline Graph disjoint_copies(const Graph& g, std::size_t copies) {
  std::vector<Edge> edges;
  const auto base = g.edges();
  for (std::size_t k = 0; k < copies; ++k) {
    const auto shift = static_cast<Vertex>(k * g.order());
    for (const auto& e : base) edges.push_back({Vertex(e.u + shift), Vertex(e.v + shift)});
  }
  return Graph::from_edge_list(copies * g.order(), edges);
}

inline constexpr std::size_t kMaxProcessOrder = 20000;

// Triangle-free process: all C(n,2) pairs are shuffled (Fisher-Yates under
// Rng(seed)) and scanned once, adding each pair that closes no triangle. The
// output is maximal triangle-free. Pairs are packed u << 16 | v, which with
// the full shuffle bounds n at kMaxProcessOrder.
inline Graph triangle_free_process(std::size_t n, Seed seed) {
  if (n < 1) throw InvalidParameter("triangle_free_process needs n >= 1");
  if (n > kMaxProcessOrder) {
    throw InvalidParameter("triangle_free_process supports n <= " +
                           std::to_string(kMaxProcessOrder));
  }
  std::vector<std::uint32_t> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) pairs.push_back(u << 16 | v);
  }
  Rng rng(seed);
  rng.shuffle(std::span<std::uint32_t>(pairs));

  // closed[u*n+v]: u and v already share a neighbour.
  std::vector<bool> closed(n * n, false);
  std::vector<std::vector<Vertex>> adj(n);
  std::vector<Edge> edges;
  for (auto p : pairs) {
    const Vertex u = p >> 16;
    const Vertex v = p & 0xffffu;
    if (closed[std::size_t(u) * n + v]) continue;
    for (Vertex w : adj[u]) {
      closed[std::size_t(v) * n + w] = true;
      closed[std::size_t(w) * n + v] = true;
    }
    for (Vertex w : adj[v]) {
      closed[std::size_t(u) * n + w] = true;
      closed[std::size_t(w) * n + u] = true;
    }
    adj[u].push_back(v);
    adj[v].push_back(u);
    edges.push_back({u, v});
  }
  return Graph::from_edge_list(n, edges);
}

// Parts {0..n/2-1} and the rest; each cross pair kept with probability p,
// pairs drawn in (u, v) lexicographic order.
inline Graph random_bipartite(std::size_t n, double p, Seed seed) {
  if (n < 2) throw InvalidParameter("random_bipartite needs n >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("probability outside [0, 1]");
  const std::size_t a = n / 2;
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < a; ++u) {
    for (std::size_t v = a; v < n; ++v) {
      if (rng.bernoulli(p)) edges.push_back({Vertex(u), Vertex(v)});
    }
  }
  return Graph::from_edge_list(n, edges);
}

namespace detail {

// Adjacency of a graph on <= 8 vertices as one bit per unordered pair.
inline std::uint32_t pair_code(const std::vector<std::uint8_t>& adj, const std::vector<int>& perm) {
  const int n = static_cast<int>(adj.size());
  std::uint32_t code = 0;
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++bit) {
      if ((adj[perm[i]] >> perm[j]) & 1) code |= 1u << bit;
    }
  }
  return code;
}

// Canonical code: the maximum pair code over all vertex relabellings.
inline std::uint32_t canonical_code(const std::vector<std::uint8_t>& adj) {
  std::vector<int> perm(adj.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::uint32_t best = 0;
  do {
    best = std::max(best, pair_code(adj, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<std::uint8_t> decode(std::uint32_t code, int n) {
  std::vector<std::uint8_t> adj(n, 0);
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++bit) {
      if ((code >> bit) & 1) {
        adj[i] |= std::uint8_t(1u << j);
        adj[j] |= std::uint8_t(1u << i);
      }
    }
  }
  return adj;
}

inline bool connected(const std::vector<std::uint8_t>& adj) {
  if (adj.empty()) return true;
  unsigned seen = 1;
  unsigned frontier = 1;
  while (frontier != 0) {
    unsigned next = 0;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if ((frontier >> v) & 1) next |= adj[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << adj.size()) - 1;
}

}  // namespace detail

// Every triangle-free graph on exactly n <= 7 vertices up to isomorphism,
// grown one vertex at a time: the new vertex is joined to an independent set
// of a smaller graph, then duplicates are removed by canonical code.
inline std::vector<Graph> triangle_free_graphs(std::size_t n, bool connected_only) {
  if (n > 7) throw InvalidParameter("exhaustive enumeration supports n <= 7");
  std::set<std::uint32_t> level{0};  // the single graph on min(n,1) vertices
  for (std::size_t k = 2; k <= n; ++k) {
    std::set<std::uint32_t> next;
    for (auto code : level) {
      auto adj = detail::decode(code, int(k - 1));
      for (unsigned nb = 0; nb < (1u << (k - 1)); ++nb) {
        bool independent = true;
        for (std::size_t v = 0; v + 1 < k && independent; ++v) {
          if (((nb >> v) & 1) && (adj[v] & nb)) independent = false;
        }
        if (!independent) continue;
        auto grown = adj;
        grown.push_back(static_cast<std::uint8_t>(nb));
        for (std::size_t v = 0; v + 1 < k; ++v) {
          if ((nb >> v) & 1) grown[v] |= std::uint8_t(1u << (k - 1));
        }
        next.insert(detail::canonical_code(grown));
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  if (n == 0) return out;
  for (auto code : level) {
    auto adj = detail::decode(code, int(n));
    if (connected_only && !detail::connected(adj)) continue;
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if ((adj[u] >> v) & 1) edges.push_back({Vertex(u), Vertex(v)});
      }
    }
    out.push_back(Graph::from_edge_list(n, edges));
  }
  return out;
}

}  // namespace tfc
