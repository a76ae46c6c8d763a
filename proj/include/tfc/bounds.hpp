#pragma once

// Closed-form colouring bounds for triangle-free graphs, with explicit slack
// functions standing in for the asymptotic o(1) terms. Logarithms are natural
// throughout.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "tfc/error.hpp"

namespace tfc {

enum class SlackMode { Standard, Zero };

// Slack function A (chromatic, floor 8/ln x) or B (list, floor 32/ln x).
//
// Standard A, with t = ln x:
//   A = c/t + (t - 8)/16 * exp(-(t - 8)/3.5)   for t >= 8
//   A = A(e^8) = c/8                            below e^8
// The decaying bump keeps |A'| <= 1/(x ln x) and |A''| <= 1/(10 x^2) on
// [e^8, inf) where c/t alone is too steep near e^8. Standard B is c/t above
// e^8 and c/8 below. c = max(floor, coefficient).
struct SlackFunction {
  SlackMode mode = SlackMode::Standard;
  double coefficient = 0.0;
  bool bump = false;
};

struct SlackConfig {
  double eps = 0.1;
  std::size_t base_n = 64;
  SlackFunction a{SlackMode::Standard, 8.0, true};
  SlackFunction b{SlackMode::Standard, 32.0, false};
  std::size_t max_split_retries = 50;
  // Local-search budget per call; 0 selects 200 * n * max list size.
  std::uint64_t budget = 0;

  static SlackConfig zero_slack() {
    SlackConfig cfg;
    cfg.eps = 0.0;
    cfg.a.mode = SlackMode::Zero;
    cfg.b.mode = SlackMode::Zero;
    return cfg;
  }
};

inline constexpr double kSlackKnee = 8.0;  // ln x at which slack stops being constant
inline constexpr double kBumpHeight = 1.0 / 16.0;
inline constexpr double kBumpScale = 3.5;

namespace detail {

inline double slack_value(double x, const SlackFunction& s, double floor_coefficient) {
  if (!(x > 1.0)) throw OutOfDomain("slack needs x > 1, got " + std::to_string(x));
  if (s.mode == SlackMode::Zero) return 0.0;
  const double c = std::max(floor_coefficient, s.coefficient);
  const double t = std::max(std::log(x), kSlackKnee);
  double value = c / t;
  if (s.bump) {
    const double over = t - kSlackKnee;
    value += kBumpHeight * over * std::exp(-over / kBumpScale);
  }
  return value;
}

inline double sqrt_n_over_log(double n) { return std::sqrt(n / std::log(n)); }

inline double edge_scale(double m) { return std::cbrt(m) / std::pow(std::log(m), 2.0 / 3.0); }

}  // namespace detail

inline double slack_A(double x, const SlackConfig& cfg = {}) {
  return detail::slack_value(x, cfg.a, 8.0);
}

inline double slack_B(double x, const SlackConfig& cfg = {}) {
  return detail::slack_value(x, cfg.b, 32.0);
}

// Leading constants.
inline const double kHallConstant = std::numbers::sqrt2;
inline const double kFractionalConstant = 2.0;
inline const double kChromaticConstant = 2.0;
inline const double kListConstant = 4.0 * std::numbers::sqrt2;
inline const double kEdgeChromaticConstant = std::pow(3.0, 5.0 / 3.0);
inline const double kEdgeListConstant = 12.0 * std::pow(3.0, 2.0 / 3.0);
inline const double kGenusChromaticConstant = 3.0 * std::pow(6.0, 2.0 / 3.0);
inline const double kGenusListConstant = 12.0 * std::pow(6.0, 2.0 / 3.0);

// f(n) = (2 + A(n)) sqrt(n / ln n)
inline double vertex_chi_bound(double n, const SlackConfig& cfg = {}) {
  if (n < 3) throw OutOfDomain("vertex bound needs n >= 3");
  return (kChromaticConstant + slack_A(n, cfg)) * detail::sqrt_n_over_log(n);
}

// g(n) = (4 sqrt 2 + B(n)) sqrt(n / ln n)
inline double vertex_list_bound(double n, const SlackConfig& cfg = {}) {
  if (n < 3) throw OutOfDomain("vertex list bound needs n >= 3");
  return (kListConstant + slack_B(n, cfg)) * detail::sqrt_n_over_log(n);
}

// Degree above which a neighbourhood is peeled: sqrt(n ln n).
inline double peel_threshold(double n) {
  if (n < 2) throw OutOfDomain("peel threshold needs n >= 2");
  return std::sqrt(n * std::log(n));
}

// Colour-degree above which a colour class is peeled: (sqrt 2 / 4) sqrt(n ln n).
inline double list_peel_threshold(double n) {
  if (n < 2) throw OutOfDomain("list peel threshold needs n >= 2");
  return std::numbers::sqrt2 / 4.0 * std::sqrt(n * std::log(n));
}

inline double edge_chi_bound(double m, const SlackConfig& cfg = {}) {
  if (m < 3) throw OutOfDomain("edge bound needs m >= 3");
  return (1.0 + cfg.eps) * kEdgeChromaticConstant * detail::edge_scale(m);
}

inline double edge_list_bound(double m, const SlackConfig& cfg = {}) {
  if (m < 3) throw OutOfDomain("edge list bound needs m >= 3");
  return (1.0 + cfg.eps) * kEdgeListConstant * detail::edge_scale(m);
}

// Degree split for the edge bound: ((m ln m) / 3)^(1/3).
inline double edge_partition_threshold(double m) {
  if (m < 2) throw OutOfDomain("edge partition threshold needs m >= 2");
  return std::cbrt(m * std::log(m) / 3.0);
}

// Colour-degree split for the list edge bound: ((m ln m) / 24)^(1/3).
inline double list_edge_partition_threshold(double m) {
  if (m < 2) throw OutOfDomain("list edge partition threshold needs m >= 2");
  return std::cbrt(m * std::log(m) / 24.0);
}

enum class Surface { Orientable, NonOrientable };

// A non-orientable genus k behaves as orientable genus k/2.
inline double effective_genus(double genus, Surface surface) {
  return surface == Surface::Orientable ? genus : genus / 2.0;
}

inline double genus_chi_bound(double genus, const SlackConfig& cfg = {},
                              Surface surface = Surface::Orientable) {
  const double g = effective_genus(genus, surface);
  if (g < 2) throw OutOfDomain("genus bound needs (orientable) genus >= 2");
  return (1.0 + cfg.eps) * kGenusChromaticConstant * detail::edge_scale(g);
}

inline double genus_list_bound(double genus, const SlackConfig& cfg = {},
                               Surface surface = Surface::Orientable) {
  const double g = effective_genus(genus, surface);
  if (g < 2) throw OutOfDomain("genus list bound needs (orientable) genus >= 2");
  return (1.0 + cfg.eps) * kGenusListConstant * detail::edge_scale(g);
}

// Low-degree removal threshold g^(1/3) (ln g)^(-2/3); genus below 2 is
// evaluated at 2.
inline double genus_degree_threshold(double genus) {
  return detail::edge_scale(std::max(genus, 2.0));
}

// Edge cap for a triangle-free graph embedded with the given genus:
// faces have length >= 4, so Euler gives m <= 2n + 4g - 4 (orientable) or
// m <= 2n + 2k - 4 (non-orientable genus k).
inline std::int64_t genus_edge_cap(std::size_t n, std::size_t genus,
                                   Surface surface = Surface::Orientable) {
  if (n < 1) throw InvalidParameter("genus_edge_cap needs n >= 1");
  const auto per = surface == Surface::Orientable ? 4 : 2;
  return 2 * static_cast<std::int64_t>(n) + per * static_cast<std::int64_t>(genus) - 4;
}

struct BoundRow {
  std::string parameter;  // hall_ratio | fractional | chromatic | list_chromatic
  std::string regime;     // vertex | edge | genus
  double input = 0.0;     // n, m or g
  double value = 0.0;
  std::string formula;
};

struct BoundReport {
  std::vector<BoundRow> rows;

  const BoundRow* find(const std::string& parameter, const std::string& regime) const {
    for (const auto& r : rows) {
      if (r.parameter == parameter && r.regime == regime) return &r;
    }
    return nullptr;
  }
};

// Vertex-regime rows: (constant + slack) sqrt(n / ln n) for the Hall ratio,
// fractional, chromatic (slack A) and list chromatic (slack B) numbers.
inline BoundReport table_bounds(double n, const SlackConfig& cfg = {}) {
  if (n < 3) throw OutOfDomain("table bounds need n >= 3");
  const double scale = detail::sqrt_n_over_log(n);
  const double a = slack_A(n, cfg);
  const double b = slack_B(n, cfg);
  BoundReport report;
  report.rows.push_back({"hall_ratio", "vertex", n, (kHallConstant + a) * scale,
                         "(sqrt(2) + A(n)) * sqrt(n/ln n)"});
  report.rows.push_back({"fractional", "vertex", n, (kFractionalConstant + a) * scale,
                         "(2 + A(n)) * sqrt(n/ln n)"});
  report.rows.push_back({"chromatic", "vertex", n, (kChromaticConstant + a) * scale,
                         "(2 + A(n)) * sqrt(n/ln n)"});
  report.rows.push_back({"list_chromatic", "vertex", n, (kListConstant + b) * scale,
                         "(4*sqrt(2) + B(n)) * sqrt(n/ln n)"});
  return report;
}

inline void append_edge_bounds(BoundReport& report, double m, const SlackConfig& cfg = {}) {
  report.rows.push_back({"chromatic", "edge", m, edge_chi_bound(m, cfg),
                         "(1+eps) * 3^(5/3) * m^(1/3) / (ln m)^(2/3)"});
  report.rows.push_back({"list_chromatic", "edge", m, edge_list_bound(m, cfg),
                         "(1+eps) * 12*3^(2/3) * m^(1/3) / (ln m)^(2/3)"});
}

inline void append_genus_bounds(BoundReport& report, double genus, const SlackConfig& cfg = {}) {
  report.rows.push_back({"chromatic", "genus", genus, genus_chi_bound(genus, cfg),
                         "(1+eps) * 3*6^(2/3) * g^(1/3) / (ln g)^(2/3)"});
  report.rows.push_back({"list_chromatic", "genus", genus, genus_list_bound(genus, cfg),
                         "(1+eps) * 12*6^(2/3) * g^(1/3) / (ln g)^(2/3)"});
}

}  // namespace tfc
