#include <gtest/gtest.h>

#include <cmath>

#include "hp_bounds.hpp"
#include "tfc/audit.hpp"
#include "tfc/bounds.hpp"

using namespace tfc;

TEST(Bounds, SlackValues) {
  EXPECT_NEAR(slack_A(std::exp(8.0)), 1.0, 1e-12);
  EXPECT_LT(slack_A(1e12), 0.3);
  EXPECT_NEAR(slack_B(std::exp(8.0)), 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(slack_A(100.0), slack_A(std::exp(8.0)));
  EXPECT_THROW(slack_A(1.0), OutOfDomain);
  EXPECT_THROW(slack_B(0.5), OutOfDomain);
  EXPECT_EQ(slack_A(1e6, SlackConfig::zero_slack()), 0.0);
}

TEST(Bounds, SlackMatchesReference) {
  for (double x : {3.0, 2981.0, 1e4, 1e6, 1e9, 1e12, 1e20}) {
    EXPECT_LT(hp::rel_err(slack_A(x), hp::slack_a(hp::Real(x))), 1e-12) << x;
    EXPECT_LT(hp::rel_err(slack_B(x), hp::slack_b(hp::Real(x))), 1e-12) << x;
  }
}

TEST(Bounds, SlackFloorsHold) {
  for (double t = 8.0; t <= 60.0; t += 0.01) {
    const double x = std::exp(t);
    EXPECT_GE(slack_A(x), 8.0 / std::log(x) - 1e-12);
    EXPECT_GE(slack_B(x), 32.0 / std::log(x) - 1e-12);
  }
}

// The derivative conditions checked with 50-digit central differences in x.
TEST(Bounds, SlackDerivativesWithinMargin) {
  using hp::Real;
  double worst1 = 0, worst2 = 0;
  for (int i = 0; i <= 400; ++i) {
    const Real t = Real(8) + (log(Real(1e12)) - 8) * i / 400 + Real(1e-6);
    const Real x = exp(t);
    const Real h = x * Real(1e-12);
    const Real a0 = hp::slack_a(x), ap = hp::slack_a(x + h), am = hp::slack_a(x - h);
    const Real d1 = (ap - am) / (2 * h);
    const Real d2 = (ap - 2 * a0 + am) / (h * h);
    worst1 = std::max(worst1, static_cast<double>(abs(d1) * x * log(x)));
    worst2 = std::max(worst2, static_cast<double>(abs(d2) * 10 * x * x));
  }
  EXPECT_LE(worst1, 0.95);
  EXPECT_LE(worst2, 0.95);
}

TEST(Bounds, LibraryAuditAgrees) {
  const auto a = audit_slack([](double x) { return slack_A(x); }, 8.0);
  EXPECT_GE(a.floor_slack, -1e-12);
  EXPECT_LE(a.first, 0.95);
  EXPECT_LE(a.second, 0.95);
  const auto b = audit_slack([](double x) { return slack_B(x); }, 32.0);
  EXPECT_GE(b.floor_slack, -1e-12);
}

TEST(Bounds, VertexBoundsMatchReference) {
  for (double n : {3.0, 20.0, 64.0, 1000.0, 2981.0, 1e4, 1e6, 1e9}) {
    EXPECT_LT(hp::rel_err(vertex_chi_bound(n), hp::chi(hp::Real(n))), 1e-12) << n;
    EXPECT_LT(hp::rel_err(vertex_list_bound(n), hp::list(hp::Real(n))), 1e-12) << n;
  }
  EXPECT_THROW(vertex_chi_bound(2), OutOfDomain);
  EXPECT_THROW(vertex_list_bound(1), OutOfDomain);
}

TEST(Bounds, Thresholds) {
  EXPECT_NEAR(peel_threshold(1e4), std::sqrt(1e4 * std::log(1e4)), 1e-9);
  EXPECT_NEAR(list_peel_threshold(1e4) / peel_threshold(1e4), std::sqrt(2.0) / 4, 1e-15);
  EXPECT_NEAR(edge_partition_threshold(1e6), std::cbrt(1e6 * std::log(1e6) / 3), 1e-9);
  EXPECT_NEAR(edge_partition_threshold(1e6) / list_edge_partition_threshold(1e6), 2.0, 1e-12);
  EXPECT_THROW(peel_threshold(1), OutOfDomain);
  EXPECT_THROW(edge_partition_threshold(1), OutOfDomain);
}

TEST(Bounds, EdgeAndGenusMatchReference) {
  for (double eps : {0.0, 0.1}) {
    SlackConfig cfg;
    cfg.eps = eps;
    for (double m : {3.0, 100.0, 1e6, 1e9}) {
      EXPECT_LT(hp::rel_err(edge_chi_bound(m, cfg), hp::edge_chi(hp::Real(m), hp::Real(eps))), 1e-12);
      EXPECT_LT(hp::rel_err(edge_list_bound(m, cfg), hp::edge_list(hp::Real(m), hp::Real(eps))), 1e-12);
    }
    for (double g : {2.0, 10.0, 1e6}) {
      EXPECT_LT(hp::rel_err(genus_chi_bound(g, cfg), hp::genus_chi(hp::Real(g), hp::Real(eps))), 1e-12);
      EXPECT_LT(hp::rel_err(genus_list_bound(g, cfg), hp::genus_list(hp::Real(g), hp::Real(eps))), 1e-12);
    }
  }
  EXPECT_THROW(edge_chi_bound(2), OutOfDomain);
  EXPECT_THROW(genus_chi_bound(1), OutOfDomain);
}

TEST(Bounds, ListToPlainRatios) {
  for (double x : {10.0, 1e6}) {
    EXPECT_NEAR(edge_list_bound(x) / edge_chi_bound(x), 4.0, 1e-12);
    EXPECT_NEAR(genus_list_bound(x) / genus_chi_bound(x), 4.0, 1e-12);
  }
}

TEST(Bounds, NonOrientableGenusHalves) {
  EXPECT_DOUBLE_EQ(genus_chi_bound(2e6, {}, Surface::NonOrientable), genus_chi_bound(1e6));
  EXPECT_EQ(genus_edge_cap(6, 1), 12);
  EXPECT_EQ(genus_edge_cap(10, 3, Surface::NonOrientable), 22);
  EXPECT_EQ(genus_edge_cap(4, 0), 4);
  EXPECT_THROW(genus_edge_cap(0, 1), InvalidParameter);
}

TEST(Bounds, TableRows) {
  const auto zero = SlackConfig::zero_slack();
  const auto t = table_bounds(1e4, zero);
  ASSERT_EQ(t.rows.size(), 4u);
  const double scale = std::sqrt(1e4 / std::log(1e4));
  EXPECT_NEAR(t.find("hall_ratio", "vertex")->value, std::sqrt(2.0) * scale, 1e-9);
  EXPECT_NEAR(t.find("chromatic", "vertex")->value, 2 * scale, 1e-9);
  EXPECT_NEAR(t.find("list_chromatic", "vertex")->value / t.find("hall_ratio", "vertex")->value, 4.0, 1e-12);
  EXPECT_NEAR(t.find("hall_ratio", "vertex")->value, 46.60, 0.01);
  EXPECT_NEAR(t.find("list_chromatic", "vertex")->value, 186.4, 0.05);
  for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_LE(t.rows[i - 1].value, t.rows[i].value);

  auto with_slack = table_bounds(1e4);
  EXPECT_LT(hp::rel_err(with_slack.find("hall_ratio", "vertex")->value, hp::hall(hp::Real(1e4))), 1e-12);
  append_edge_bounds(with_slack, 1e6);
  append_genus_bounds(with_slack, 1e6);
  EXPECT_NE(with_slack.find("chromatic", "genus"), nullptr);
  EXPECT_EQ(with_slack.find("fractional", "genus"), nullptr);
}

TEST(Bounds, RecursionInequality) {
  const auto f = audit_recursion([](double n) { return vertex_chi_bound(n); }, peel_threshold, 64, 1e6);
  EXPECT_GE(f.worst, 1.0) << "at n=" << f.at;
  const auto g = audit_recursion([](double n) { return vertex_list_bound(n); }, list_peel_threshold, 64, 1e6);
  EXPECT_GE(g.worst, 1.0) << "at n=" << g.at;
}

TEST(Bounds, Concavity) {
  const auto f = audit_concavity([](double n) { return vertex_chi_bound(n); }, 20, 1e6);
  EXPECT_LT(f.worst, 0.0) << "at n=" << f.at;
  const auto g = audit_concavity([](double n) { return vertex_list_bound(n); }, 20, 1e6);
  EXPECT_LT(g.worst, 0.0) << "at n=" << g.at;
}
