#include <gtest/gtest.h>

#include <cmath>

#include "tfc/generators.hpp"
#include "tfc/genus.hpp"

using namespace tfc;

namespace {

// Each vertex removed by the strip had at most d neighbours among the
// vertices still present, i.e. removed after it or in the core.
void expect_valid_strip(const Graph& g, const GenusResult& r, const std::vector<Vertex>& order) {
  std::vector<std::size_t> position(g.order(), order.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t later = 0;
    for (Vertex u : g.neighbors(order[i])) later += position[u] > i;
    EXPECT_LE(double(later), r.degree_threshold);
  }
}

}  // namespace

TEST(Genus, LeastConsistentGenusOfCompleteBipartite) {
  // Euler's bound is tight for K_{a,b}: genus ceil((a-2)(b-2)/4)
  for (std::size_t a = 2; a <= 7; ++a) {
    for (std::size_t b = a; b <= 9; ++b) {
      const auto want = ((a - 2) * (b - 2) + 3) / 4;
      EXPECT_EQ(least_consistent_genus(complete_bipartite(a, b)), want) << a << "," << b;
    }
  }
  EXPECT_EQ(least_consistent_genus(cycle(5)), 0u);
  EXPECT_EQ(least_consistent_genus(petersen()), 0u);
}

TEST(Genus, RejectsGraphsAboveTheEdgeCap) {
  const auto g = triangle_free_process(200, Seed{1});
  EXPECT_THROW(genus_color(g, 0, SlackConfig{}), EdgeCapViolated);
  const auto genus = least_consistent_genus(g);
  EXPECT_THROW(genus_color(g, genus - 1, SlackConfig{}), EdgeCapViolated);
  EXPECT_NO_THROW(genus_color(g, genus, SlackConfig{}));
  // least non-orientable k with m <= 2n + 2k - 4
  const auto k = std::size_t((std::int64_t(g.size()) - 2 * std::int64_t(g.order()) + 5) / 2);
  EXPECT_LE(k, 2 * genus);
  EXPECT_NO_THROW(genus_color(g, k, SlackConfig{}, Seed{}, Surface::NonOrientable));
  EXPECT_THROW(genus_color(g, k - 1, SlackConfig{}, Seed{}, Surface::NonOrientable),
               EdgeCapViolated);
  EXPECT_THROW(genus_color(complete(3), 10, SlackConfig{}), NotTriangleFree);
}

TEST(Genus, StripThenColour) {
  for (std::uint64_t s = 1; s <= 3; ++s) {
    const auto g = triangle_free_process(600, Seed{s});
    const auto genus = least_consistent_genus(g);
    const auto r = genus_color(g, genus, SlackConfig{}, Seed{s});
    ASSERT_TRUE(r.coloring);
    EXPECT_FALSE(validate_coloring(g, *r.coloring));
    EXPECT_EQ(r.removed + r.core_order, g.order());
    EXPECT_NEAR(r.degree_threshold, genus_degree_threshold(double(genus)), 1e-12);
    EXPECT_EQ(r.target, std::size_t(std::ceil(genus_chi_bound(double(genus)))));
    const auto order = detail::strip_low_degree(g, r.degree_threshold);
    EXPECT_EQ(order.size(), r.removed);
    expect_valid_strip(g, r, order);
    // the core left behind has minimum degree above d
    const auto core = induced_subgraph(g, detail::core_of(g.order(), order));
    for (Vertex v = 0; v < core.graph.order(); ++v) EXPECT_GT(double(core.graph.degree(v)), r.degree_threshold);
  }
}

TEST(Genus, StrippedVerticesFitBelowTheThreshold) {
  // a path strips entirely; each vertex then sees at most one coloured neighbour
  const auto r = genus_color(path(30), 0, SlackConfig{});
  EXPECT_EQ(r.core_order, 0u);
  ASSERT_TRUE(r.coloring);
  EXPECT_EQ(r.coloring->palette_size, 2u);
  EXPECT_EQ(r.extensions, 0u);
}

TEST(Genus, GrotzschCopies) {
  const auto g = disjoint_copies(grotzsch(), 50);
  const auto r = genus_color(g, least_consistent_genus(g), SlackConfig{});
  ASSERT_TRUE(r.coloring);
  EXPECT_FALSE(validate_coloring(g, *r.coloring));
  EXPECT_GE(colors_used(*r.coloring), 4u);  // chi(Grotzsch) = 4
}

TEST(Genus, ListMode) {
  const auto g = triangle_free_process(400, Seed{4});
  const auto genus = least_consistent_genus(g);
  const auto k = std::size_t(std::ceil(split_floors(double(g.size()), 0.1).k));
  const auto lists = ListAssignment::random(g.order(), k, 2 * k, Seed{5});
  const auto r = genus_color(g, genus, lists, SlackConfig{}, Seed{6});
  ASSERT_TRUE(r.coloring);
  EXPECT_FALSE(validate_coloring(g, *r.coloring));
  EXPECT_TRUE(respects_lists(*r.coloring, lists));
  EXPECT_EQ(r.target, std::size_t(std::ceil(genus_list_bound(double(genus)))));
}

TEST(Genus, Deterministic) {
  const auto g = triangle_free_process(500, Seed{8});
  const auto genus = least_consistent_genus(g);
  const auto a = genus_color(g, genus, SlackConfig{}, Seed{1});
  const auto b = genus_color(g, genus, SlackConfig{}, Seed{1});
  EXPECT_EQ(a.coloring->colors, b.coloring->colors);
  EXPECT_EQ(a.trace, b.trace);
}
