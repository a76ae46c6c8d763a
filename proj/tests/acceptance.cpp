// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hp_bounds.hpp"
#include "tfc/tfc.hpp"

using namespace tfc;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::cout << (o.passed ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << std::endl;
  failures += !o.passed;
}

// Shared record of every algorithm run over the fixture suite.
struct SuiteStats {
  std::size_t instances = 0;
  std::size_t runs = 0;
  std::size_t improper = 0;
  std::size_t off_list = 0;
  std::size_t no_colouring = 0;
  std::size_t errors = 0;
  std::size_t split_refusals = 0;
  std::size_t max_n = 0;
  std::string first_problem;
  // trace audit
  std::size_t peel_records = 0;
  std::size_t list_peel_records = 0;
  std::size_t trace_violations = 0;
  // partition caps
  std::size_t partitions = 0;
  std::size_t cap_violations = 0;
  std::size_t genus_rejections = 0;
  std::size_t genus_rejection_misses = 0;
  double seconds = 0;

  void problem(const std::string& what) {
    if (first_problem.empty()) first_problem = what;
  }
};

struct Fixture {
  std::string id;
  Graph graph;
};

std::vector<Fixture> fixture_suite() {
  std::vector<Fixture> out;
  auto add = [&](std::string id, Graph g) { out.push_back({std::move(id), std::move(g)}); };
  const std::vector<std::pair<std::size_t, std::uint64_t>> process_grid{
      {64, 36}, {100, 36}, {200, 30}, {500, 30}, {1000, 30}, {2000, 8}, {5000, 3}};
  for (const auto& [n, seeds] : process_grid) {
    for (std::uint64_t s = 1; s <= seeds; ++s) {
      add("process-n" + std::to_string(n) + "-s" + std::to_string(s), triangle_free_process(n, Seed{s}));
    }
  }
  for (std::size_t n : {60u, 300u}) {
    for (std::uint64_t s = 1; s <= 8; ++s) {
      add("bipartite-n" + std::to_string(n) + "-s" + std::to_string(s), random_bipartite(n, 0.3, Seed{s}));
    }
  }
  for (std::size_t d = 1; d <= 4; ++d) add("mycielski-d" + std::to_string(d), mycielski_family(d));
  for (std::size_t n : {5u, 8u, 101u}) add("cycle-n" + std::to_string(n), cycle(n));
  add("petersen", petersen());
  add("grotzsch", grotzsch());
  add("grotzsch-x10", disjoint_copies(grotzsch(), 10));
  add("grotzsch-x50", disjoint_copies(grotzsch(), 50));
  add("star-200", star(200));
  return out;
}

void check_trace(SuiteStats& st, const PeelTrace& trace, bool list, const std::string& where) {
  for (const auto& t : trace) {
    const double bar = list ? list_peel_threshold(double(t.remaining)) : peel_threshold(double(t.remaining));
    (list ? st.list_peel_records : st.peel_records)++;
    if (!(double(t.peeled) > bar)) {
      ++st.trace_violations;
      st.problem(where + ": peel of " + std::to_string(t.peeled) + " at order " + std::to_string(t.remaining));
    }
  }
}

void check_caps(SuiteStats& st, const PartitionReport& r, const std::string& where) {
  ++st.partitions;
  if (double(r.low_max_degree) > r.threshold || r.high_count > r.high_cap) {
    ++st.cap_violations;
    st.problem(where + ": partition caps violated");
  }
}

void check_colouring(SuiteStats& st, const Graph& g, const std::optional<Coloring>& c,
                     const ListAssignment* lists, const std::string& where) {
  ++st.runs;
  if (!c) {
    ++st.no_colouring;
    st.problem(where + ": no colouring returned");
    return;
  }
  if (validate_coloring(g, *c)) {
    ++st.improper;
    st.problem(where + ": improper");
  }
  if (lists && !respects_lists(*c, *lists)) {
    ++st.off_list;
    st.problem(where + ": colour outside its list");
  }
}

SuiteStats run_suite() {
  SuiteStats st;
  const auto start = Clock::now();
  const SlackConfig cfg;
  const auto suite = fixture_suite();
  for (std::size_t index = 0; index < suite.size(); ++index) {
    const auto& fx = suite[index];
    const Graph& g = fx.graph;
    ++st.instances;
    st.max_n = std::max(st.max_n, g.order());
    const Seed seed = derive_seed(Seed{index}, 1);
    auto guarded = [&](const std::string& algo, const std::function<void(const std::string&)>& body) {
      const auto where = fx.id + "/" + algo;
      try {
        body(where);
      } catch (const std::exception& e) {
        ++st.errors;
        ++st.runs;
        st.problem(where + ": " + e.what());
      }
    };

    guarded("peel", [&](const std::string& where) {
      auto r = peel_and_color(g, cfg);
      check_colouring(st, g, r.coloring, nullptr, where);
      check_trace(st, r.trace, false, where);
    });
    guarded("edge", [&](const std::string& where) {
      auto r = edge_partition_color(g, cfg, seed);
      check_colouring(st, g, r.coloring, nullptr, where);
      check_trace(st, r.trace, false, where);
      if (g.size() >= 3) check_caps(st, r.report, where);
    });
    guarded("list-peel", [&](const std::string& where) {
      const auto k = std::size_t(std::ceil(vertex_list_bound(double(g.order()), cfg)));
      const auto lists = ListAssignment::random(g.order(), k, 2 * k, derive_seed(seed, 2));
      auto r = list_peel_and_color(g, lists, cfg, seed);
      check_colouring(st, g, r.coloring, &lists, where);
      check_trace(st, r.trace, true, where);
    });
    guarded("list-edge", [&](const std::string& where) {
      const auto floor = g.size() >= 3 ? split_floors(double(g.size()), cfg.eps).k : 2.0;
      // at the floor itself a palette split may legitimately fail; such refusals are
      // counted and the instance is rerun with lists a quarter longer
      for (double scale : {1.0, 1.25}) {
        const auto k = std::size_t(std::ceil(scale * floor));
        const auto lists = ListAssignment::random(g.order(), k, 2 * k, derive_seed(seed, 3));
        try {
          auto r = list_edge_partition_color(g, lists, cfg, seed);
          check_colouring(st, g, r.coloring, &lists, where);
          check_trace(st, r.trace, true, where);
          if (r.report.threshold > 0) check_caps(st, r.report, where);
          return;
        } catch (const SplitFailed&) {
          ++st.split_refusals;
        }
      }
      ++st.errors;
      ++st.runs;
      st.problem(where + ": palette split failed even with longer lists");
    });
    guarded("genus", [&](const std::string& where) {
      const auto genus = least_consistent_genus(g);
      auto r = genus_color(g, genus, cfg, seed);
      check_colouring(st, g, r.coloring, nullptr, where);
      check_trace(st, r.trace, false, where);
      if (r.core_order > 0 && r.core_report.threshold > 0 && std::isfinite(r.core_report.threshold)) {
        check_caps(st, r.core_report, where);
      }
      // one genus less must be refused whenever the cap is tight enough to matter
      if (genus > 0) {
        try {
          genus_color(g, genus - 1, cfg, seed);
          ++st.genus_rejection_misses;
          st.problem(where + ": accepted genus " + std::to_string(genus - 1));
        } catch (const EdgeCapViolated&) {
          ++st.genus_rejections;
        }
      }
      // non-orientable: least k with m <= 2n + 2k - 4, straight from Euler
      const auto excess = std::int64_t(g.size()) - 2 * std::int64_t(g.order()) + 4;
      if (excess > 0) {
        const auto k = std::size_t((excess + 1) / 2);
        genus_color(g, k, cfg, seed, Surface::NonOrientable);
        try {
          genus_color(g, k - 1, cfg, seed, Surface::NonOrientable);
          ++st.genus_rejection_misses;
          st.problem(where + ": accepted non-orientable genus " + std::to_string(k - 1));
        } catch (const EdgeCapViolated&) {
          ++st.genus_rejections;
        }
      }
    });
  }
  st.seconds = seconds_since(start);
  return st;
}

Outcome criterion_properness(const SuiteStats& st) {
  Outcome o;
  o.passed = st.instances >= 200 && st.improper == 0 && st.off_list == 0 && st.errors == 0 &&
             st.no_colouring == 0 && st.seconds < 600;
  std::ostringstream d;
  d << st.instances << " instances (max n " << st.max_n << "), " << st.runs << " runs, improper "
    << st.improper << ", off-list " << st.off_list << ", no colouring " << st.no_colouring << ", errors "
    << st.errors << ", split refusals at the list floor " << st.split_refusals << ", " << std::fixed << std::setprecision(1) << st.seconds << " s";
  if (!st.first_problem.empty()) d << "; first problem: " << st.first_problem;
  o.detail = d.str();
  return o;
}

Outcome criterion_trace(const SuiteStats& st) {
  Outcome o;
  o.passed = st.trace_violations == 0 && st.peel_records > 0 && st.list_peel_records > 0;
  o.detail = std::to_string(st.peel_records) + " peel records, " + std::to_string(st.list_peel_records) +
             " list peel records, violations " + std::to_string(st.trace_violations);
  return o;
}

Outcome criterion_caps(const SuiteStats& st) {
  Outcome o;
  // a direct rejection on top of the suite: K_{5,5} needs genus 1
  bool direct = false;
  try {
    genus_color(complete_bipartite(5, 5), 0, SlackConfig{});
  } catch (const EdgeCapViolated&) {
    direct = true;
  }
  o.passed = st.cap_violations == 0 && st.partitions > 0 && st.genus_rejection_misses == 0 &&
             st.genus_rejections > 0 && direct;
  o.detail = std::to_string(st.partitions) + " partitions within caps (violations " +
             std::to_string(st.cap_violations) + "), " + std::to_string(st.genus_rejections) +
             " cap violations rejected, misses " + std::to_string(st.genus_rejection_misses) +
             (direct ? ", K5,5 at genus 0 rejected" : ", K5,5 at genus 0 ACCEPTED");
  return o;
}

Outcome criterion_oracle_chain() {
  const auto start = Clock::now();
  std::vector<Graph> graphs;
  for (std::size_t n = 1; n <= 7; ++n) {
    for (auto& g : triangle_free_graphs(n, true)) graphs.push_back(std::move(g));
  }
  graphs.push_back(petersen());
  graphs.push_back(grotzsch());
  std::size_t checked = 0, list_checked = 0, bad = 0;
  std::string first;
  for (const auto& g : graphs) {
    const auto n = g.order();
    const auto alpha = exact_independence(g);
    const auto chi = exact_chromatic(g);
    bool ok = alpha * chi >= n;
    if (n <= 6 || n >= 10) {
      ++checked;
      const auto rho = hall_ratio_exact(g);
      const auto chif = fractional_chromatic_exact(g);
      ok = ok && rho <= chif && chif <= Rational(std::int64_t(chi));
    }
    if (n <= 7) {
      const auto chil = list_chromatic_number(g, 4);
      if (chil) {
        ++list_checked;
        ok = ok && chi <= *chil;
      }
    }
    if (!ok) {
      ++bad;
      if (first.empty()) first = detail::serialize(g);
    }
  }
  Outcome o;
  const double secs = seconds_since(start);
  o.passed = bad == 0 && secs < 300;
  std::ostringstream d;
  d << checked << " graphs with rho <= chi_f <= chi, " << list_checked << " with chi <= chi_l, " << graphs.size()
    << " with alpha*chi >= n, violations " << bad << ", " << std::fixed << std::setprecision(1) << secs << " s";
  if (!first.empty()) d << "; first: " << first;
  o.detail = d.str();
  return o;
}

Outcome criterion_fixtures() {
  const auto chi_g = exact_chromatic(grotzsch());
  const auto chi_p = exact_chromatic(petersen());
  const auto alpha_p = exact_independence(petersen());
  const auto f_p = fractional_chromatic_exact(petersen());
  const auto f_c = fractional_chromatic_exact(cycle(5));
  Outcome o;
  o.passed = chi_g == 4 && chi_p == 3 && alpha_p == 4 && f_p == Rational(5, 2) && f_c == Rational(5, 2);
  o.detail = "chi(Grotzsch)=" + std::to_string(chi_g) + " chi(Petersen)=" + std::to_string(chi_p) +
             " alpha(Petersen)=" + std::to_string(alpha_p) + " chi_f(Petersen)=" + f_p.str() +
             " chi_f(C5)=" + f_c.str();
  return o;
}

Outcome criterion_bounds() {
  using hp::Real;
  struct Pin {
    std::string name;
    double got;
    Real want;
  };
  const SlackConfig cfg;
  const Real eps(cfg.eps);
  std::vector<Pin> pins;
  for (double n : {20.0, 64.0, 1000.0, 1e4, 1e6, 1e9}) {
    pins.push_back({"chi(" + std::to_string(n) + ")", vertex_chi_bound(n, cfg), hp::chi(Real(n))});
    pins.push_back({"list(" + std::to_string(n) + ")", vertex_list_bound(n, cfg), hp::list(Real(n))});
  }
  for (double n : {1e4, 1e7}) pins.push_back({"hall", table_bounds(n, cfg).find("hall_ratio", "vertex")->value, hp::hall(Real(n))});
  for (double m : {100.0, 1e6}) {
    pins.push_back({"edge_chi", edge_chi_bound(m, cfg), hp::edge_chi(Real(m), eps)});
    pins.push_back({"edge_list", edge_list_bound(m, cfg), hp::edge_list(Real(m), eps)});
  }
  pins.push_back({"genus_chi", genus_chi_bound(50, cfg), hp::genus_chi(Real(50), eps)});
  pins.push_back({"genus_list", genus_list_bound(1e5, cfg), hp::genus_list(Real(1e5), eps)});
  double worst = 0;
  for (const auto& p : pins) worst = std::max(worst, hp::rel_err(p.got, p.want));

  const auto a = audit_slack([&](double x) { return slack_A(x, cfg); }, 8.0, 1000);
  const auto b = audit_slack([&](double x) { return slack_B(x, cfg); }, 32.0, 1000);
  const bool slack_ok = a.floor_slack >= -1e-12 && a.first <= 0.95 && a.second <= 0.95 && b.floor_slack >= -1e-12;
  const auto f = audit_recursion([&](double n) { return vertex_chi_bound(n, cfg); }, peel_threshold, 64, 1e7);

  Outcome o;
  o.passed = pins.size() == 20 && worst <= 1e-9 && slack_ok && f.worst >= 1.0;
  std::ostringstream d;
  d << pins.size() << " pinned values, worst rel err " << std::scientific << std::setprecision(2) << worst
    << std::defaultfloat << std::setprecision(4) << "; A: floor margin " << a.floor_slack << ", |A'|x ln x "
    << a.first << ", 10x^2|A''| " << a.second << "; B floor margin " << b.floor_slack
    << "; min f(n)-f(n-ceil d(n)) " << f.worst << " at n=" << f.at;
  o.detail = d.str();
  return o;
}

Outcome criterion_split() {
  const double eps = 0.3;
  const std::size_t trials = 1000;
  const auto g = triangle_free_process(100, Seed{2024});
  const auto floors = split_floors(double(g.size()), eps);
  const auto k = std::size_t(std::ceil(floors.k));
  const auto lists = ListAssignment::random(g.order(), k, 2 * k, Seed{7});
  const auto palette = lists.palette();
  std::vector<std::size_t> misses(g.order(), 0);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto split = split_once(palette, derive_seed(Seed{99}, t));
    for (Vertex v = 0; v < g.order(); ++v) {
      if (count_in(lists[v], split.part1) < floors.need1 || count_in(lists[v], split.part2) < floors.need2) {
        ++misses[v];
      }
    }
  }
  const double p = std::min(1.0, split_failure_estimate(double(k), eps));
  const double sigma = std::sqrt(p * (1 - p) / double(trials));
  const double limit = p + 3 * sigma;
  double worst = 0;
  std::size_t total = 0;
  for (auto c : misses) {
    worst = std::max(worst, double(c) / double(trials));
    total += c;
  }
  Outcome o;
  o.passed = worst <= limit;
  std::ostringstream d;
  d << "m=" << g.size() << " k=" << k << " floors " << floors.need1 << "/" << floors.need2
    << "; worst per-vertex rate " << worst << ", mean " << double(total) / double(trials * g.order())
    << ", Chernoff " << p << " + 3 sigma = " << limit;
  o.detail = d.str();
  return o;
}

Outcome criterion_tracking() {
  bool ok = true;
  std::ostringstream d;
  std::size_t flagged = 0;
  for (std::size_t n : {500u, 1000u, 2000u}) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const auto start = Clock::now();
      const auto g = triangle_free_process(n, Seed{s});
      const auto r = peel_and_color(g, SlackConfig{});
      const double secs = seconds_since(start);
      const auto used = colors_used(r.coloring);
      const auto delta = max_degree(g).degree;
      const auto bound = std::size_t(std::ceil(vertex_chi_bound(double(n))));
      const bool within = used <= delta + 1 + r.peel_colors && secs < 60;
      ok = ok && within;
      if (used > bound) ++flagged;
      d << " n=" << n << "/s" << s << ": " << used << " colours, bound " << bound << ", peels " << r.peel_colors
        << ", Delta " << delta << (used > bound ? " [above bound]" : "") << (within ? "" : " [LIMIT]") << ";";
    }
  }
  Outcome o;
  o.passed = ok;
  o.detail = std::to_string(flagged) + " flagged above the bound;" + d.str();
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string stripped_csv(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line, out;
  while (std::getline(in, line)) out += strip_runtime(line) + "\n";
  return out;
}

Outcome criterion_determinism() {
  const auto root = fs::temp_directory_path() / "tfc_acceptance_determinism";
  fs::remove_all(root);
  std::size_t compared = 0, differing = 0;
  std::string first;
  const std::vector<std::pair<std::string, nlohmann::json>> algos{
      {"peel", nlohmann::json{{"name", "peel"}}},
      {"edge", nlohmann::json{{"name", "edge"}}},
      {"list-peel", nlohmann::json{{"name", "list-peel"}, {"lists", {{"kind", "random"}}}}},
      {"list-edge", nlohmann::json{{"name", "list-edge"}, {"lists", {{"kind", "random"}, {"scale", 1.25}}}}},
      {"genus", nlohmann::json{{"name", "genus"}}}};
  for (const auto& [name, algo] : algos) {
    std::vector<fs::path> dirs;
    for (const char* threads : {"1", "2"}) {
      const auto dir = root / (name + "-" + threads);
      setenv("TFC_THREADS", threads, 1);
      nlohmann::json spec{{"generator", {{"model", "process"}, {"n", {150, 600}}}},
                          {"algorithm", algo},
                          {"seeds", {3, 4, 5}},
                          {"output", (dir / "rows.csv").string()},
                          {"artifacts", (dir / "art").string()}};
      fs::create_directories(dir);
      run_experiment(parse_spec(spec));
      dirs.push_back(dir);
    }
    unsetenv("TFC_THREADS");
    ++compared;
    if (stripped_csv(dirs[0] / "rows.csv") != stripped_csv(dirs[1] / "rows.csv")) {
      ++differing;
      if (first.empty()) first = name + " CSV";
    }
    for (const auto& entry : fs::directory_iterator(dirs[0] / "art")) {
      const auto other = dirs[1] / "art" / entry.path().filename();
      ++compared;
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
        ++differing;
        if (first.empty()) first = entry.path().filename().string();
      }
    }
  }
  fs::remove_all(root);
  Outcome o;
  o.passed = differing == 0 && compared > 5;
  o.detail = std::to_string(compared) + " files compared across reruns, differing " + std::to_string(differing) +
             (first.empty() ? "" : " (first: " + first + ")");
  return o;
}

}  // namespace

int main() {
  std::cout << "running fixture suite for criteria 1, 2 and 7" << std::endl;
  const auto suite = run_suite();
  report(1, "properness", criterion_properness(suite));
  report(2, "peel-trace audit", criterion_trace(suite));
  report(3, "oracle chain", criterion_oracle_chain());
  report(4, "ground-truth fixtures", criterion_fixtures());
  report(5, "bound formulas", criterion_bounds());
  report(6, "palette split vs Chernoff", criterion_split());
  report(7, "partition caps", criterion_caps(suite));
  report(8, "empirical bound tracking", criterion_tracking());
  report(9, "determinism", criterion_determinism());
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
