#pragma once

// Named invariant suites, run by `tfc audit`. Each check reports pass/fail
// and, on failure, a serialized counterexample.

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tfc/bounds.hpp"
#include "tfc/coloring.hpp"
#include "tfc/generators.hpp"
#include "tfc/genus.hpp"
#include "tfc/io.hpp"
#include "tfc/list_coloring.hpp"
#include "tfc/oracles.hpp"

namespace tfc {

enum class AuditLevel { Fast, Full };

struct AuditEntry {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditEntry> entries;

  bool passed() const {
    for (const auto& e : entries) {
      if (!e.passed) return false;
    }
    return true;
  }
};

// Worst observed ratio of each slack constraint to its allowance over
// log-spaced samples x in [e^8, 1e12]. Derivatives in x come from finite
// differences in t = ln x:  A' = A_t / x,  A'' = (A_tt - A_t) / x^2.
struct SlackAudit {
  double floor_slack = 0.0;  // min of A(x) - c/ln x (>= 0 passes)
  double first = 0.0;        // max |A'| x ln x
  double second = 0.0;       // max |A''| 10 x^2
  double at_first = 0.0;
  double at_second = 0.0;
};

inline SlackAudit audit_slack(const std::function<double(double)>& slack, double floor_coeff,
                              std::size_t samples = 1000) {
  SlackAudit out;
  out.floor_slack = std::numeric_limits<double>::infinity();
  const double lo = kSlackKnee;
  const double hi = std::log(1e12);
  const double h = 1e-3;
  auto at = [&](double t) { return slack(std::exp(t)); };
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * double(i) / double(samples - 1);
    double dt = 0.0;
    double dtt = 0.0;
    if (t - h < lo) {
      // one-sided at the knee, where the constant piece takes over
      const double a0 = at(t), a1 = at(t + h), a2 = at(t + 2 * h), a3 = at(t + 3 * h);
      dt = (-3 * a0 + 4 * a1 - a2) / (2 * h);
      dtt = (2 * a0 - 5 * a1 + 4 * a2 - a3) / (h * h);
    } else {
      const double am = at(t - h), a0 = at(t), ap = at(t + h);
      dt = (ap - am) / (2 * h);
      dtt = (ap - 2 * a0 + am) / (h * h);
    }
    out.floor_slack = std::min(out.floor_slack, at(t) - floor_coeff / t);
    const double r1 = std::abs(dt) * t;
    const double r2 = std::abs(dtt - dt) * 10.0;
    if (r1 > out.first) {
      out.first = r1;
      out.at_first = t;
    }
    if (r2 > out.second) {
      out.second = r2;
      out.at_second = t;
    }
  }
  return out;
}

// min over log-spaced integers n in [lo, hi] of bound(n) - bound(n - ceil(d(n))).
struct RecursionAudit {
  double worst = std::numeric_limits<double>::infinity();
  double at = 0.0;
};

inline RecursionAudit audit_recursion(const std::function<double(double)>& bound,
                                      const std::function<double(double)>& step, double lo,
                                      double hi, std::size_t samples = 1000) {
  RecursionAudit out;
  for (std::size_t i = 0; i < samples; ++i) {
    const double n = std::round(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * double(i) / double(samples - 1)));
    const double gap = bound(n) - bound(n - std::ceil(step(n)));
    if (gap < out.worst) {
      out.worst = gap;
      out.at = n;
    }
  }
  return out;
}

// Largest second difference bound(n+1) - 2 bound(n) + bound(n-1) over
// log-spaced integers in [lo, hi] (negative passes).
inline RecursionAudit audit_concavity(const std::function<double(double)>& bound, double lo,
                                      double hi, std::size_t samples = 1000) {
  RecursionAudit out;
  out.worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const double n = std::round(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * double(i) / double(samples - 1)));
    const double diff = bound(n + 1) - 2 * bound(n) + bound(n - 1);
    if (diff > out.worst) {
      out.worst = diff;
      out.at = n;
    }
  }
  return out;
}

inline bool is_maximal_triangle_free(const Graph& g) {
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (g.adjacent(u, v)) continue;
      const auto a = g.neighbors(u);
      const auto b = g.neighbors(v);
      std::vector<Vertex> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (common.empty()) return false;
    }
  }
  return true;
}

namespace detail {

inline std::string serialize(const Graph& g, const Coloring* c = nullptr) {
  nlohmann::json j;
  j["n"] = g.order();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = edges;
  if (c) j["colors"] = c->colors;
  return j.dump();
}

struct AuditRun {
  AuditReport report;

  void check(const std::string& name, const std::function<std::string()>& body) {
    AuditEntry entry{name, true, ""};
    try {
      entry.detail = body();
      entry.passed = entry.detail.rfind("FAIL", 0) != 0;
    } catch (const std::exception& e) {
      entry.passed = false;
      entry.detail = std::string("FAIL exception: ") + e.what();
    }
    report.entries.push_back(std::move(entry));
  }
};

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

inline std::vector<Graph> coloring_fixtures(AuditLevel level) {
  std::vector<Graph> out{grotzsch(), petersen(), disjoint_copies(grotzsch(), 20), cycle(101),
                         complete_bipartite(30, 40), random_bipartite(200, 0.2, Seed{7})};
  const std::vector<std::size_t> sizes = level == AuditLevel::Fast
                                             ? std::vector<std::size_t>{150, 400}
                                             : std::vector<std::size_t>{150, 400, 1000, 2000};
  for (auto n : sizes) {
    for (std::uint64_t s = 1; s <= 2; ++s) out.push_back(triangle_free_process(n, Seed{s}));
  }
  return out;
}

}  // namespace detail

inline AuditReport audit_invariants(AuditLevel level) {
  detail::AuditRun run;
  const SlackConfig cfg;
  using detail::fmt;

  run.check("bounds.slack_A", [&] {
    const auto a = audit_slack([&](double x) { return slack_A(x, cfg); }, 8.0);
    const bool ok = a.floor_slack >= -1e-12 && a.first <= 0.95 && a.second <= 0.95;
    return std::string(ok ? "" : "FAIL ") + "floor margin " + fmt(a.floor_slack) + ", |A'| x ln x <= " +
           fmt(a.first) + " (ln x=" + fmt(a.at_first) + "), 10 x^2 |A''| <= " + fmt(a.second) +
           " (ln x=" + fmt(a.at_second) + ")";
  });
  run.check("bounds.slack_B_floor", [&] {
    const auto b = audit_slack([&](double x) { return slack_B(x, cfg); }, 32.0);
    return std::string(b.floor_slack >= -1e-12 ? "" : "FAIL ") + "floor margin " + fmt(b.floor_slack);
  });
  run.check("bounds.recursion_f", [&] {
    const auto r = audit_recursion([&](double n) { return vertex_chi_bound(n, cfg); }, peel_threshold,
                                   double(cfg.base_n), 1e6);
    return std::string(r.worst >= 1.0 ? "" : "FAIL ") + "min f(n)-f(n-ceil d(n)) = " + fmt(r.worst) +
           " at n=" + fmt(r.at);
  });
  run.check("bounds.recursion_g", [&] {
    const auto r = audit_recursion([&](double n) { return vertex_list_bound(n, cfg); },
                                   list_peel_threshold, double(cfg.base_n), 1e6);
    return std::string(r.worst >= 1.0 ? "" : "FAIL ") + "min g(n)-g(n-ceil d(n)) = " + fmt(r.worst) +
           " at n=" + fmt(r.at);
  });
  run.check("bounds.concavity", [&] {
    const auto f = audit_concavity([&](double n) { return vertex_chi_bound(n, cfg); }, 20, 1e6);
    const auto g = audit_concavity([&](double n) { return vertex_list_bound(n, cfg); }, 20, 1e6);
    const bool ok = f.worst < 0 && g.worst < 0;
    return std::string(ok ? "" : "FAIL ") + "max second difference f " + fmt(f.worst) + " (n=" +
           fmt(f.at) + "), g " + fmt(g.worst) + " (n=" + fmt(g.at) + ")";
  });

  run.check("generators.process_maximal", [&] {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const auto g = triangle_free_process(level == AuditLevel::Fast ? 120 : 400, Seed{s});
      if (!is_triangle_free(g) || !is_maximal_triangle_free(g)) {
        return "FAIL seed " + std::to_string(s) + ": " + detail::serialize(g);
      }
    }
    return std::string("3 seeds maximal triangle-free");
  });

  const auto fixtures = detail::coloring_fixtures(level);
  run.check("coloring.proper", [&] {
    std::size_t runs = 0;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
      const auto& g = fixtures[i];
      const Seed seed{i + 1};
      std::vector<std::pair<std::string, Coloring>> out;
      out.emplace_back("peel", peel_and_color(g, cfg).coloring);
      out.emplace_back("edge", edge_partition_color(g, cfg, seed).coloring);
      const auto k = std::size_t(std::ceil(vertex_list_bound(double(g.order()), cfg)));
      const auto lp_lists = ListAssignment::random(g.order(), k, 2 * k, seed);
      auto lp = list_peel_and_color(g, lp_lists, cfg, seed);
      if (!lp.coloring) return "FAIL list-peel failure on " + detail::serialize(g);
      if (!respects_lists(*lp.coloring, lp_lists)) return "FAIL list-peel off-list on " + detail::serialize(g);
      out.emplace_back("list-peel", *lp.coloring);
      if (g.size() >= 3) {
        // lists a quarter above the floor: at fixture sizes a split at the floor itself can fail
        const auto kk = std::size_t(std::ceil(1.25 * split_floors(double(g.size()), cfg.eps).k));
        const auto le_lists = ListAssignment::random(g.order(), kk, 2 * kk, seed);
        auto le = list_edge_partition_color(g, le_lists, cfg, seed);
        if (!le.coloring) return "FAIL list-edge failure on " + detail::serialize(g);
        if (!respects_lists(*le.coloring, le_lists)) return "FAIL list-edge off-list on " + detail::serialize(g);
        out.emplace_back("list-edge", *le.coloring);
      }
      auto gc = genus_color(g, least_consistent_genus(g), cfg, seed);
      out.emplace_back("genus", *gc.coloring);
      for (const auto& [name, c] : out) {
        ++runs;
        if (auto bad = validate_coloring(g, c)) {
          return "FAIL " + name + " edge (" + std::to_string(bad->u) + "," + std::to_string(bad->v) +
                 ") " + detail::serialize(g, &c);
        }
      }
    }
    return std::to_string(runs) + " colourings proper";
  });

  run.check("coloring.peel_trace", [&] {
    for (const auto& g : fixtures) {
      const auto r = peel_and_color(g, cfg);
      for (const auto& t : r.trace) {
        if (!(double(t.peeled) > peel_threshold(double(t.remaining)))) {
          return "FAIL peel of " + std::to_string(t.peeled) + " at order " + std::to_string(t.remaining);
        }
      }
      if (r.coloring.palette_size != r.peel_colors + r.base_colors) return std::string("FAIL palette accounting");
      const auto k = std::size_t(std::ceil(vertex_list_bound(double(g.order()), cfg)));
      const auto lr = list_peel_and_color(g, ListAssignment::uniform(g.order(), k), cfg);
      for (const auto& t : lr.trace) {
        if (!(double(t.peeled) > list_peel_threshold(double(t.remaining)))) {
          return "FAIL list peel of " + std::to_string(t.peeled) + " at order " + std::to_string(t.remaining);
        }
      }
    }
    return std::string("all trace records exceed their thresholds");
  });

  run.check("coloring.index_rebuild", [&] {
    const auto g = triangle_free_process(level == AuditLevel::Fast ? 200 : 500, Seed{11});
    const auto lists = ListAssignment::random(g.order(), 12, 30, Seed{12});
    ColorDegreeIndex index(g, lists);
    Rng rng(Seed{13});
    for (int round = 0; round < 40 && index.alive_count() > 0; ++round) {
      const auto v = Vertex(rng.below(g.order()));
      if (index.alive(v)) index.delete_vertex(v);
      const auto x = Vertex(rng.below(g.order()));
      if (index.alive(x) && !index.slots(x).empty()) index.remove_color(x, index.slots(x).front());
      if (!index.matches_rebuild()) return "FAIL after round " + std::to_string(round);
    }
    return std::string("incremental index equals rebuild");
  });

  run.check("coloring.partition_caps", [&] {
    std::size_t runs = 0;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
      const auto& g = fixtures[i];
      if (g.size() < 3) continue;
      const auto r = edge_partition_color(g, cfg, Seed{i});
      if (double(r.report.low_max_degree) > r.report.threshold || r.report.high_count > r.report.high_cap) {
        return "FAIL edge partition on " + detail::serialize(g);
      }
      ++runs;
    }
    return std::to_string(runs) + " partitions within caps";
  });

  run.check("coloring.genus_cap_rejects", [&] {
    try {
      genus_color(complete_bipartite(5, 5), 0, cfg);
    } catch (const EdgeCapViolated&) {
      return std::string("K5,5 at genus 0 rejected");
    }
    return std::string("FAIL K5,5 accepted at genus 0");
  });

  run.check("coloring.split_floors", [&] {
    const double m = 2000;
    const auto floors = split_floors(m, 0.3);
    const auto lists = ListAssignment::uniform(50, std::size_t(std::ceil(floors.k)));
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto split = split_palette(lists, m, 0.3, Seed{s}, 50);
      if (split && floor_violations(lists, split->split, floors) != 0) {
        return "FAIL split accepted below floors, seed " + std::to_string(s);
      }
    }
    return std::string("accepted splits meet both floors");
  });

  run.check("coloring.determinism", [&] {
    const auto g = triangle_free_process(300, Seed{5});
    const auto k = std::size_t(std::ceil(split_floors(double(g.size()), cfg.eps).k));
    const auto lists = ListAssignment::random(g.order(), k, 2 * k, Seed{6});
    const auto a = list_edge_partition_color(g, lists, cfg, Seed{9});
    const auto b = list_edge_partition_color(g, lists, cfg, Seed{9});
    const auto ja = to_json(ColoringRecord{*a.coloring, a.trace, "list-edge", 9}).dump();
    const auto jb = to_json(ColoringRecord{*b.coloring, b.trace, "list-edge", 9}).dump();
    return std::string(ja == jb ? "identical reruns" : "FAIL reruns differ");
  });

  run.check("oracles.chain", [&] {
    std::vector<Graph> graphs;
    const std::size_t top = level == AuditLevel::Fast ? 6 : 7;
    for (std::size_t n = 1; n <= top; ++n) {
      for (auto& g : triangle_free_graphs(n, true)) graphs.push_back(std::move(g));
    }
    graphs.push_back(petersen());
    graphs.push_back(grotzsch());
    for (const auto& g : graphs) {
      const auto rho = hall_ratio_exact(g);
      const auto chif = fractional_chromatic_exact(g);
      const auto chi = exact_chromatic(g);
      const auto alpha = exact_independence(g);
      bool ok = rho <= chif && chif <= Rational(std::int64_t(chi)) && alpha * chi >= g.order() &&
                rho >= Rational(std::int64_t(g.order()), std::int64_t(alpha));
      if (ok && g.order() <= 7 && chi >= 1) {
        ok = !exact_list_chromatic(g, chi - 1).at_most_k;
      }
      if (!ok) return "FAIL " + detail::serialize(g);
    }
    return std::to_string(graphs.size()) + " graphs satisfy rho <= chi_f <= chi <= chi_l";
  });

  run.check("oracles.fixtures", [&] {
    const bool ok = exact_chromatic(grotzsch()) == 4 && exact_chromatic(petersen()) == 3 &&
                    exact_independence(petersen()) == 4 &&
                    fractional_chromatic_exact(petersen()) == Rational(5, 2) &&
                    fractional_chromatic_exact(cycle(5)) == Rational(5, 2);
    return std::string(ok ? "pinned values reproduced" : "FAIL pinned oracle values changed");
  });

  run.check("negative_control.corrupted_coloring", [&] {
    const auto g = petersen();
    auto c = dsatur(g);
    c.colors[1] = c.colors[0];  // 0 -- 1 is an edge
    const auto bad = validate_coloring(g, c);
    if (!bad) return "FAIL corruption not detected " + detail::serialize(g, &c);
    return "detected violating edge (" + std::to_string(bad->u) + "," + std::to_string(bad->v) + ")";
  });

  return run.report;
}

}  // namespace tfc
