#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "tfc/generators.hpp"

using namespace tfc;

namespace {

bool connected(const Graph& g) {
  if (g.order() == 0) return true;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.order();
}

bool maximal_triangle_free(const Graph& g) {
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (g.adjacent(u, v)) continue;
      bool closes = false;
      for (Vertex w = 0; w < g.order() && !closes; ++w) closes = g.adjacent(u, w) && g.adjacent(v, w);
      if (!closes) return false;
    }
  }
  return true;
}

std::size_t automorphisms(const Graph& g) {
  std::vector<Vertex> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t count = 0;
  const auto edges = g.edges();
  do {
    bool ok = true;
    for (const auto& e : edges) {
      if (!g.adjacent(perm[e.u], perm[e.v])) {
        ok = false;
        break;
      }
    }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Labelled connected triangle-free graphs on n vertices, by scanning all
// 2^(n choose 2) edge sets.
std::size_t labelled_count(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::size_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<std::uint32_t> adj(n, 0);
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if ((mask >> b) & 1) {
        adj[pairs[b].first] |= 1u << pairs[b].second;
        adj[pairs[b].second] |= 1u << pairs[b].first;
      }
    }
    bool tf = true;
    for (std::size_t b = 0; b < pairs.size() && tf; ++b) {
      if (((mask >> b) & 1) && (adj[pairs[b].first] & adj[pairs[b].second])) tf = false;
    }
    if (!tf) continue;
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint32_t next = 0;
      for (int v = 0; v < n; ++v)
        if ((frontier >> v) & 1) next |= adj[v];
      frontier = next & ~seen;
      seen |= next;
    }
    count += seen == (1u << n) - 1;
  }
  return count;
}

}  // namespace

TEST(Generators, BasicFamilies) {
  EXPECT_EQ(path(5).size(), 4u);
  EXPECT_EQ(cycle(7).size(), 7u);
  EXPECT_THROW(cycle(2), InvalidParameter);
  EXPECT_EQ(complete(5).size(), 10u);
  auto k = complete_bipartite(3, 4);
  EXPECT_EQ(k.size(), 12u);
  EXPECT_FALSE(k.adjacent(0, 1));
  EXPECT_TRUE(k.adjacent(2, 3));
  EXPECT_EQ(star(6).degree(0), 6u);
}

TEST(Generators, MycielskianCounts) {
  const auto g = petersen();
  const auto m = mycielskian(g);
  EXPECT_EQ(m.order(), 2 * g.order() + 1);
  EXPECT_EQ(m.size(), 3 * g.size() + g.order());
  EXPECT_TRUE(is_triangle_free(m));
}

TEST(Generators, MycielskiFamily) {
  const auto c5 = mycielski_family(1);
  EXPECT_EQ(c5.order(), 5u);
  EXPECT_EQ(c5.size(), 5u);
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(c5.degree(v), 2u);
  EXPECT_TRUE(connected(c5));
  const auto gr = grotzsch();
  EXPECT_EQ(gr.order(), 11u);
  EXPECT_EQ(gr.size(), 20u);
  EXPECT_TRUE(is_triangle_free(gr));
  EXPECT_EQ(mycielski_family(3).order(), 23u);
}

TEST(Generators, Petersen) {
  const auto g = petersen();
  EXPECT_EQ(g.size(), 15u);
  for (Vertex v = 0; v < 10; ++v) EXPECT_EQ(g.degree(v), 3u);
  // girth 5: no two vertices share two neighbours
  for (Vertex u = 0; u < 10; ++u) {
    for (Vertex v = u + 1; v < 10; ++v) {
      int common = 0;
      for (Vertex w = 0; w < 10; ++w) common += g.adjacent(u, w) && g.adjacent(v, w);
      EXPECT_LE(common, 1);
    }
  }
  EXPECT_EQ(automorphisms(g), 120u);
}

TEST(Generators, DisjointCopies) {
  const auto g = disjoint_copies(grotzsch(), 3);
  EXPECT_EQ(g.order(), 33u);
  EXPECT_EQ(g.size(), 60u);
  EXPECT_FALSE(g.adjacent(10, 11));
  const auto u = disjoint_union(cycle(4), path(3));
  EXPECT_EQ(u.order(), 7u);
  EXPECT_EQ(u.size(), 6u);
}

TEST(Generators, ProcessIsMaximalTriangleFree) {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const auto g = triangle_free_process(80, Seed{s});
    EXPECT_TRUE(is_triangle_free(g));
    EXPECT_TRUE(maximal_triangle_free(g)) << "seed " << s;
  }
}

TEST(Generators, ProcessDeterministic) {
  EXPECT_EQ(triangle_free_process(300, Seed{7}).edges(), triangle_free_process(300, Seed{7}).edges());
  EXPECT_NE(triangle_free_process(300, Seed{7}).edges(), triangle_free_process(300, Seed{8}).edges());
}

TEST(Generators, ProcessLimits) {
  EXPECT_THROW(triangle_free_process(0, Seed{1}), InvalidParameter);
  EXPECT_THROW(triangle_free_process(kMaxProcessOrder + 1, Seed{1}), InvalidParameter);
  EXPECT_EQ(triangle_free_process(1, Seed{1}).size(), 0u);
  EXPECT_EQ(triangle_free_process(2, Seed{1}).size(), 1u);
}

TEST(Generators, RandomBipartite) {
  EXPECT_EQ(random_bipartite(10, 0.0, Seed{1}).size(), 0u);
  EXPECT_EQ(random_bipartite(10, 1.0, Seed{1}).size(), 25u);
  const auto g = random_bipartite(40, 0.3, Seed{3});
  for (const auto& e : g.edges()) EXPECT_TRUE(e.u < 20 && e.v >= 20);
  EXPECT_THROW(random_bipartite(10, 1.5, Seed{1}), InvalidParameter);
  EXPECT_EQ(g.edges(), random_bipartite(40, 0.3, Seed{3}).edges());
}

// The enumeration is complete and duplicate-free exactly when the orbit sizes
// n!/|Aut(G)| of its graphs add up to the labelled count.
TEST(Generators, EnumerationMatchesLabelledCount) {
  for (int n = 1; n <= 7; ++n) {
    const auto graphs = triangle_free_graphs(n, true);
    std::size_t factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= i;
    std::size_t orbit_total = 0;
    for (const auto& g : graphs) {
      EXPECT_TRUE(is_triangle_free(g));
      EXPECT_TRUE(connected(g));
      orbit_total += factorial / automorphisms(g);
    }
    EXPECT_EQ(orbit_total, labelled_count(n)) << "n=" << n;
  }
}

TEST(Generators, EnumerationIncludesDisconnected) {
  // all triangle-free graphs on 4 vertices: empty, K2, 2K2, P3, P4, K1,3, C4
  EXPECT_EQ(triangle_free_graphs(4, false).size(), 7u);
  EXPECT_THROW(triangle_free_graphs(8, true), InvalidParameter);
}
