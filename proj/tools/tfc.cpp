// tfc: command-line front end. Exit codes: 0 ok, 1 validation failure,
// 2 input error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tfc/tfc.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kInput = 2;

using namespace tfc;

struct GenerateArgs {
  std::string model;
  std::size_t n = 0;
  double p = 0.5;
  std::size_t depth = 2;
  std::size_t copies = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  Graph g;
  const Seed seed{a.seed};
  if (a.model == "cycle") {
    g = cycle(a.n);
  } else if (a.model == "path") {
    g = path(a.n);
  } else if (a.model == "mycielski") {
    g = mycielski_family(a.depth);
  } else if (a.model == "petersen") {
    g = petersen();
  } else if (a.model == "grotzsch") {
    g = grotzsch();
  } else if (a.model == "grotzsch-copies") {
    g = disjoint_copies(grotzsch(), a.copies);
  } else if (a.model == "bipartite") {
    g = random_bipartite(a.n, a.p, seed);
  } else if (a.model == "process") {
    g = triangle_free_process(a.n, seed);
  } else {
    throw InvalidParameter("unknown model '" + a.model + "'");
  }
  write_graph_file(a.out, g);
  std::cout << "wrote " << a.out << ": n=" << g.order() << " m=" << g.size() << '\n';
  return kOk;
}

struct ColorArgs {
  std::string graph;
  std::string algo = "peel";
  std::optional<std::size_t> genus;
  std::string surface = "orientable";
  std::string lists_file;
  std::size_t uniform_lists = 0;
  std::size_t random_lists = 0;
  std::size_t palette = 0;
  double eps = 0.1;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::size_t base_n = 64;
  bool zero_slack = false;
  std::string out;
};

SlackConfig make_config(double eps, std::size_t base_n, std::uint64_t budget, bool zero) {
  SlackConfig cfg = zero ? SlackConfig::zero_slack() : SlackConfig{};
  cfg.eps = eps;
  cfg.base_n = base_n;
  cfg.budget = budget;
  return cfg;
}

std::optional<ListAssignment> load_lists(const ColorArgs& a, std::size_t n) {
  if (!a.lists_file.empty()) return read_lists_file(a.lists_file, n);
  if (a.uniform_lists > 0) return ListAssignment::uniform(n, a.uniform_lists);
  if (a.random_lists > 0) {
    const auto palette = a.palette ? a.palette : 2 * a.random_lists;
    return ListAssignment::random(n, a.random_lists, palette, derive_seed(Seed{a.seed}, 2));
  }
  return std::nullopt;
}

int cmd_color(const ColorArgs& a) {
  const Graph g = read_graph_file(a.graph);
  const auto cfg = make_config(a.eps, a.base_n, a.budget, a.zero_slack);
  const auto lists = load_lists(a, g.order());
  const Seed seed{a.seed};
  const bool list_algo = a.algo == "list-peel" || a.algo == "list-edge";
  if (list_algo && !lists) throw InvalidParameter(a.algo + " needs --lists, --uniform-lists or --random-lists");

  std::optional<Coloring> coloring;
  PeelTrace trace;
  std::string note;
  if (a.algo == "peel") {
    auto r = peel_and_color(g, cfg);
    note = "peels=" + std::to_string(r.peel_colors) + " base_colours=" + std::to_string(r.base_colors);
    coloring = std::move(r.coloring);
    trace = std::move(r.trace);
  } else if (a.algo == "dsatur") {
    coloring = dsatur(g);
  } else if (a.algo == "edge") {
    auto r = edge_partition_color(g, cfg, seed);
    note = "d=" + std::to_string(r.report.threshold) + " |V1|=" + std::to_string(r.report.low_count) +
           " |V2|=" + std::to_string(r.report.high_count);
    coloring = std::move(r.coloring);
    trace = std::move(r.trace);
  } else if (a.algo == "list-peel") {
    auto r = list_peel_and_color(g, *lists, cfg, seed);
    coloring = std::move(r.coloring);
    trace = std::move(r.trace);
  } else if (a.algo == "list-edge") {
    auto r = list_edge_partition_color(g, *lists, cfg, seed);
    note = "d=" + std::to_string(r.report.threshold) + " |V1|=" + std::to_string(r.report.low_count) +
           " |V2|=" + std::to_string(r.report.high_count) + " stripped=" + std::to_string(r.stripped) +
           " split_attempts=" + std::to_string(r.split_attempts);
    coloring = std::move(r.coloring);
    trace = std::move(r.trace);
  } else if (a.algo == "genus") {
    const auto surface = a.surface == "orientable" ? Surface::Orientable : Surface::NonOrientable;
    const auto genus = a.genus.value_or(least_consistent_genus(g));
    auto r = lists ? genus_color(g, genus, *lists, cfg, seed, surface) : genus_color(g, genus, cfg, seed, surface);
    note = "genus=" + std::to_string(genus) + " removed=" + std::to_string(r.removed) +
           " core=" + std::to_string(r.core_order) + " target=" + std::to_string(r.target) +
           " extensions=" + std::to_string(r.extensions);
    coloring = std::move(r.coloring);
    trace = std::move(r.trace);
  } else {
    throw InvalidParameter("unknown algorithm '" + a.algo + "'");
  }

  if (!coloring) {
    std::cout << a.algo << ": failure (no colouring found)\n";
    return kValidation;
  }
  if (auto bad = validate_coloring(g, *coloring)) {
    std::cout << a.algo << ": improper colouring, edge (" << bad->u << "," << bad->v << ")\n";
    return kValidation;
  }
  if (lists && list_algo && !respects_lists(*coloring, *lists)) {
    std::cout << a.algo << ": colour outside a list\n";
    return kValidation;
  }
  if (!a.out.empty()) write_coloring_file(a.out, ColoringRecord{*coloring, trace, a.algo, a.seed});
  std::cout << a.algo << ": n=" << g.order() << " m=" << g.size() << " colours=" << colors_used(*coloring)
            << " palette=" << coloring->palette_size;
  if (!note.empty()) std::cout << ' ' << note;
  std::cout << '\n';
  return kOk;
}

struct BoundsArgs {
  std::optional<double> n;
  std::optional<double> m;
  std::optional<double> genus;
  double eps = 0.1;
  bool zero_slack = false;
  std::string format = "table";
};

int cmd_bounds(const BoundsArgs& a) {
  const auto cfg = make_config(a.eps, 64, 0, a.zero_slack);
  BoundReport report;
  if (a.n) report = table_bounds(*a.n, cfg);
  if (a.m) append_edge_bounds(report, *a.m, cfg);
  if (a.genus) append_genus_bounds(report, *a.genus, cfg);
  if (report.rows.empty()) throw InvalidParameter("give at least one of --n, --m, --genus");

  if (a.format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : report.rows) {
      out.push_back({{"parameter", r.parameter}, {"regime", r.regime}, {"input", r.input},
                     {"value", r.value}, {"formula", r.formula}});
    }
    std::cout << out.dump(1) << '\n';
  } else if (a.format == "csv") {
    std::cout << "parameter,regime,input,value,formula\n";
    for (const auto& r : report.rows) {
      std::cout << r.parameter << ',' << r.regime << ',' << format_real(r.input) << ','
                << format_real(r.value) << ",\"" << r.formula << "\"\n";
    }
  } else {
    for (const auto& r : report.rows) {
      std::printf("%-15s %-7s %14.6g %14.6f   %s\n", r.parameter.c_str(), r.regime.c_str(), r.input,
                  r.value, r.formula.c_str());
    }
  }
  return kOk;
}

struct OracleArgs {
  std::string which;
  std::string graph;
  std::string lists;
  std::optional<std::size_t> k;
};

int cmd_oracle(const OracleArgs& a) {
  const Graph g = read_graph_file(a.graph);
  if (a.which == "alpha") {
    std::cout << exact_independence(g) << '\n';
  } else if (a.which == "chi") {
    std::cout << exact_chromatic(g) << '\n';
  } else if (a.which == "rho") {
    std::cout << hall_ratio_exact(g) << '\n';
  } else if (a.which == "chif") {
    std::cout << fractional_chromatic_exact(g) << '\n';
  } else if (a.which == "lcheck") {
    if (a.lists.empty()) throw InvalidParameter("lcheck needs --lists");
    const auto found = l_colorable(g, read_lists_file(a.lists, g.order()));
    if (!found) {
      std::cout << "none\n";
    } else {
      std::cout << nlohmann::json(found->colors).dump() << '\n';
    }
  } else if (a.which == "chil") {
    if (a.k) {
      std::cout << (exact_list_chromatic(g, *a.k).at_most_k ? "<= " : "> ") << *a.k << '\n';
    } else {
      const OracleBudget budget;
      const auto value = list_chromatic_number(g, budget.max_list_size, budget);
      if (value) {
        std::cout << *value << '\n';
      } else {
        std::cout << "> " << budget.max_list_size << '\n';
      }
    }
  } else {
    throw InvalidParameter("unknown oracle '" + a.which + "'");
  }
  return kOk;
}

int cmd_verify(const std::string& coloring_path, const std::string& graph_path,
               const std::string& lists_path) {
  const auto record = read_coloring_file(coloring_path);
  const Graph g = read_graph_file(graph_path);
  if (record.coloring.colors.size() != g.order()) {
    std::cout << "improper: colouring covers " << record.coloring.colors.size() << " vertices, graph has "
              << g.order() << '\n';
    return kValidation;
  }
  try {
    if (auto bad = validate_coloring(g, record.coloring)) {
      std::cout << "improper: edge (" << bad->u << "," << bad->v << ") has colour "
                << record.coloring.colors[bad->u] << " at both ends\n";
      return kValidation;
    }
  } catch (const InvalidColoring& e) {
    std::cout << "improper: " << e.what() << '\n';
    return kValidation;
  }
  if (!lists_path.empty()) {
    const auto lists = read_lists_file(lists_path, g.order());
    if (!respects_lists(record.coloring, lists)) {
      std::cout << "improper: colour outside its list\n";
      return kValidation;
    }
  }
  std::cout << "proper: " << colors_used(record.coloring) << " colours\n";
  return kOk;
}

int cmd_experiment(const std::string& spec_path, const std::string& output) {
  auto spec = read_spec_file(spec_path);
  if (!output.empty()) spec.output = output;
  const auto rows = run_experiment(spec);
  std::size_t proper = 0;
  bool invalid = false;
  for (const auto& r : rows) {
    if (r.verdict == "proper") ++proper;
    if (r.verdict == "improper" || r.verdict == "below_chi") invalid = true;
  }
  if (spec.output.empty()) write_csv(std::cout, rows);
  std::cerr << rows.size() << " rows, " << proper << " proper" << (spec.output.empty() ? "" : ", wrote " + spec.output)
            << '\n';
  return invalid ? kValidation : kOk;
}

int cmd_audit(bool full) {
  const auto report = audit_invariants(full ? AuditLevel::Full : AuditLevel::Fast);
  for (const auto& e : report.entries) {
    std::cout << (e.passed ? "PASS " : "FAIL ") << e.name << ": " << e.detail << '\n';
  }
  return report.passed() ? kOk : kValidation;
}

int cmd_bench(const std::string& spec_path, const std::string& output) {
  const auto spec = read_spec_file(spec_path);
  const auto report = bench(spec);
  if (output.empty()) {
    std::cout << report.dump(1) << '\n';
  } else {
    std::ofstream out(output);
    if (!out) throw ParseError("cannot write " + output);
    out << report.dump(1) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colouring triangle-free graphs: algorithms, bounds and exact oracles"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a triangle-free instance");
  generate->add_option("--model", gen.model, "cycle|path|mycielski|petersen|grotzsch|grotzsch-copies|bipartite|process")
      ->required();
  generate->add_option("--n", gen.n, "Vertex count");
  generate->add_option("--p", gen.p, "Edge probability (bipartite)");
  generate->add_option("--depth", gen.depth, "Mycielski depth");
  generate->add_option("--copies", gen.copies, "Copies (grotzsch-copies)");
  generate->add_option("--seed", gen.seed, "Seed");
  generate->add_option("-o,--output", gen.out, "Output file (.col for DIMACS, else edge list)")->required();

  ColorArgs col;
  auto* color = app.add_subcommand("color", "Colour a graph file");
  color->add_option("file", col.graph, "Graph file")->required();
  color->add_option("--algo", col.algo, "peel|edge|list-peel|list-edge|genus|dsatur");
  color->add_option("--genus", col.genus, "Declared genus (genus algorithm)");
  color->add_option("--surface", col.surface, "orientable|nonorientable");
  color->add_option("--lists", col.lists_file, "List file");
  color->add_option("--uniform-lists", col.uniform_lists, "Lists {0..K-1} at every vertex");
  color->add_option("--random-lists", col.random_lists, "Random K-lists");
  color->add_option("--palette", col.palette, "Palette for --random-lists (default 2K)");
  color->add_option("--eps", col.eps, "Epsilon");
  color->add_option("--seed", col.seed, "Seed");
  color->add_option("--budget", col.budget, "Local-search step budget (0: 200 n |L|)");
  color->add_option("--base-n", col.base_n, "Recursion base size");
  color->add_flag("--zero-slack", col.zero_slack, "Use zero slack functions");
  color->add_option("-o,--output", col.out, "Colouring JSON output");

  BoundsArgs bnd;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the colouring bounds");
  bounds->add_option("--n", bnd.n, "Vertex count");
  bounds->add_option("--m", bnd.m, "Edge count");
  bounds->add_option("--genus", bnd.genus, "Genus");
  bounds->add_option("--eps", bnd.eps, "Epsilon");
  bounds->add_flag("--zero-slack", bnd.zero_slack, "Use zero slack functions");
  bounds->add_option("--format", bnd.format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "Exact small-instance parameters");
  oracle->add_option("which", orc.which, "alpha|chi|rho|chif|lcheck|chil")
      ->required()
      ->check(CLI::IsMember({"alpha", "chi", "rho", "chif", "lcheck", "chil"}));
  oracle->add_option("file", orc.graph, "Graph file")->required();
  oracle->add_option("--lists", orc.lists, "List file (lcheck)");
  oracle->add_option("--k", orc.k, "List size (chil)");

  std::string verify_coloring, verify_graph, verify_lists;
  auto* verify = app.add_subcommand("verify", "Check a colouring against a graph");
  verify->add_option("coloring", verify_coloring, "Colouring JSON")->required();
  verify->add_option("graph", verify_graph, "Graph file")->required();
  verify->add_option("--lists", verify_lists, "Also check list membership");

  std::string exp_spec, exp_out;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment spec");
  experiment->add_option("spec", exp_spec, "Spec JSON")->required();
  experiment->add_option("-o,--output", exp_out, "CSV output (overrides the spec)");

  bool audit_full = false;
  auto* audit = app.add_subcommand("audit", "Run the invariant suites");
  audit->add_flag("--full", audit_full, "Larger fixtures and 7-vertex enumeration");

  std::string bench_spec, bench_out;
  auto* benchmark = app.add_subcommand("bench", "Time an experiment spec");
  benchmark->add_option("spec", bench_spec, "Spec JSON")->required();
  benchmark->add_option("-o,--output", bench_out, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*color) return cmd_color(col);
    if (*bounds) return cmd_bounds(bnd);
    if (*oracle) return cmd_oracle(orc);
    if (*verify) return cmd_verify(verify_coloring, verify_graph, verify_lists);
    if (*experiment) return cmd_experiment(exp_spec, exp_out);
    if (*audit) return cmd_audit(audit_full);
    if (*benchmark) return cmd_bench(bench_spec, bench_out);
  } catch (const tfc::Error& e) {
    std::cerr << "tfc: " << e.what() << '\n';
    return kInput;
  } catch (const std::logic_error& e) {
    // an asserted invariant (partition caps) broke
    std::cerr << "tfc: invariant violated: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "tfc: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}
