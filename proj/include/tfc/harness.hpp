#pragma once

// Experiment runner: expands a JSON spec into (instance, seed) cells, runs
// one algorithm per cell, validates every colouring and emits CSV rows in
// spec order. Cells run in parallel, capped by TFC_THREADS.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "tfc/bounds.hpp"
#include "tfc/coloring.hpp"
#include "tfc/error.hpp"
#include "tfc/generators.hpp"
#include "tfc/genus.hpp"
#include "tfc/io.hpp"
#include "tfc/list_coloring.hpp"
#include "tfc/lists.hpp"
#include "tfc/oracles.hpp"

namespace tfc {

inline const char* const kCsvVersion = "# tfc-csv v1";

enum class Algorithm { Peel, Edge, ListPeel, ListEdge, Genus, Dsatur };

inline Algorithm parse_algorithm(const std::string& name) {
  if (name == "peel") return Algorithm::Peel;
  if (name == "edge") return Algorithm::Edge;
  if (name == "list-peel") return Algorithm::ListPeel;
  if (name == "list-edge") return Algorithm::ListEdge;
  if (name == "genus") return Algorithm::Genus;
  if (name == "dsatur") return Algorithm::Dsatur;
  throw InvalidSpec("unknown algorithm '" + name + "'");
}

inline std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Peel: return "peel";
    case Algorithm::Edge: return "edge";
    case Algorithm::ListPeel: return "list-peel";
    case Algorithm::ListEdge: return "list-edge";
    case Algorithm::Genus: return "genus";
    case Algorithm::Dsatur: return "dsatur";
  }
  return "?";
}

inline bool is_list_algorithm(Algorithm a) {
  return a == Algorithm::ListPeel || a == Algorithm::ListEdge;
}

// List source for list algorithms. size 0 means "the algorithm's own
// precondition": ceil(g(n)) for list-peel, ceil(k(m)) for list-edge.
// Random lists draw from a palette of palette_factor * size colours.
struct ListSource {
  std::string kind = "uniform";  // uniform | random
  std::size_t size = 0;          // 0: the algorithm's own list-size precondition
  double scale = 1.0;            // multiplier on that precondition when size is 0
  double palette_factor = 2.0;
};

struct ExperimentSpec {
  std::string model;               // process | bipartite | mycielski | cycle | petersen | grotzsch | grotzsch-copies
  std::vector<std::size_t> sizes;  // n, depth or copy count depending on the model
  double p = 0.5;                  // bipartite edge probability
  Algorithm algorithm = Algorithm::Peel;
  SlackConfig cfg;
  std::optional<ListSource> lists;
  std::optional<std::size_t> genus;  // genus algorithm; unset = least cap-consistent genus
  std::vector<std::uint64_t> seeds;
  bool oracle = false;
  std::string output;
  std::string artifacts;           // directory for per-row graph + colouring files
};

inline ExperimentSpec parse_spec(const nlohmann::json& j) {
  try {
    ExperimentSpec s;
    const auto& gen = j.at("generator");
    s.model = gen.at("model").get<std::string>();
    if (gen.contains("n")) {
      const auto& n = gen.at("n");
      s.sizes = n.is_array() ? n.get<std::vector<std::size_t>>() : std::vector<std::size_t>{n.get<std::size_t>()};
    } else if (gen.contains("depth")) {
      const auto& d = gen.at("depth");
      s.sizes = d.is_array() ? d.get<std::vector<std::size_t>>() : std::vector<std::size_t>{d.get<std::size_t>()};
    } else if (gen.contains("copies")) {
      const auto& d = gen.at("copies");
      s.sizes = d.is_array() ? d.get<std::vector<std::size_t>>() : std::vector<std::size_t>{d.get<std::size_t>()};
    } else if (s.model == "petersen" || s.model == "grotzsch") {
      s.sizes = {0};
    }
    s.p = gen.value("p", 0.5);

    const auto& algo = j.at("algorithm");
    s.algorithm = parse_algorithm(algo.at("name").get<std::string>());
    s.cfg.eps = algo.value("eps", s.cfg.eps);
    s.cfg.base_n = algo.value("base_n", s.cfg.base_n);
    s.cfg.budget = algo.value("budget", s.cfg.budget);
    s.cfg.max_split_retries = algo.value("max_split_retries", s.cfg.max_split_retries);
    if (algo.value("zero_slack", false)) {
      const auto eps = s.cfg.eps;
      const auto base = s.cfg.base_n;
      s.cfg = SlackConfig::zero_slack();
      s.cfg.eps = eps;
      s.cfg.base_n = base;
    }
    if (algo.contains("lists")) {
      ListSource src;
      const auto& l = algo.at("lists");
      src.kind = l.value("kind", src.kind);
      src.size = l.value("size", src.size);
      src.palette_factor = l.value("palette_factor", src.palette_factor);
      src.scale = l.value("scale", src.scale);
      if (src.scale < 1.0) throw InvalidSpec("list scale must be >= 1");
      if (src.kind != "uniform" && src.kind != "random") {
        throw InvalidSpec("list kind must be uniform or random");
      }
      s.lists = src;
    }
    if (algo.contains("genus")) s.genus = algo.at("genus").get<std::size_t>();

    s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    s.oracle = j.value("oracle", false);
    s.output = j.value("output", std::string{});
    s.artifacts = j.value("artifacts", std::string{});

    if (s.seeds.empty()) throw InvalidSpec("seed list is empty");
    if (s.sizes.empty()) throw InvalidSpec("generator parameter grid is empty");
    if (is_list_algorithm(s.algorithm) && !s.lists) {
      throw InvalidSpec(algorithm_name(s.algorithm) + " needs a list source");
    }
    if (!is_list_algorithm(s.algorithm) && s.lists && s.algorithm != Algorithm::Genus) {
      throw InvalidSpec(algorithm_name(s.algorithm) + " does not take lists");
    }
    static const std::vector<std::string> models{"process", "bipartite", "mycielski", "cycle",
                                                 "petersen", "grotzsch", "grotzsch-copies"};
    if (std::find(models.begin(), models.end(), s.model) == models.end()) {
      throw InvalidSpec("unknown generator model '" + s.model + "'");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec(std::string("spec JSON: ") + e.what());
  }
}

inline ExperimentSpec read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("spec JSON: ") + e.what());
  }
  return parse_spec(j);
}

struct ResultRow {
  std::string instance_id;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::size_t colours_used = 0;
  double bound = std::nan("");  // NaN when the regime has no defined bound
  double bound_ratio = std::nan("");  // bound / colours used
  double runtime_ms = 0.0;
  std::string verdict;  // proper | improper | failure | error:<Name> | below_chi
  std::size_t peel_count = 0;
  std::size_t largest_peel = 0;
  std::optional<std::size_t> exact_chi;
};

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "instance_id", "n", "m", "seed", "algorithm", "colours_used", "bound", "bound_ratio",
      "runtime_ms", "verdict", "peel_count", "largest_peel", "exact_chi"};
  return cols;
}

inline std::string format_real(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string csv_line(const ResultRow& r) {
  std::ostringstream os;
  os << r.instance_id << ',' << r.n << ',' << r.m << ',' << r.seed << ',' << r.algorithm << ','
     << r.colours_used << ',' << format_real(r.bound) << ',' << format_real(r.bound_ratio) << ','
     << format_real(r.runtime_ms) << ',' << r.verdict << ',' << r.peel_count << ','
     << r.largest_peel << ',' << (r.exact_chi ? std::to_string(*r.exact_chi) : "");
  return os.str();
}

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvVersion << '\n';
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : rows) out << csv_line(r) << '\n';
}

// Drops the runtime column from a CSV line so reruns can be compared.
inline std::string strip_runtime(const std::string& line) {
  if (line.empty() || line[0] == '#') return line;
  static const auto index = static_cast<std::size_t>(
      std::find(csv_columns().begin(), csv_columns().end(), "runtime_ms") - csv_columns().begin());
  std::string out;
  std::size_t field = 0;
  for (char ch : line) {
    if (ch == ',') {
      if (field++ != index) out += ',';
      continue;
    }
    if (field != index) out += ch;
  }
  return out;
}

inline std::size_t thread_cap() {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TFC_THREADS")) {
    char* end = nullptr;
    const auto v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) cap = v;
  }
  return cap;
}

struct Instance {
  std::string id;
  Graph graph;
};

// Graph for one (size, seed) cell; deterministic models ignore the seed.
inline Instance make_instance(const ExperimentSpec& s, std::size_t size, std::uint64_t seed) {
  const Seed gs = derive_seed(Seed{seed}, 0);
  if (s.model == "process") return {"process-n" + std::to_string(size), triangle_free_process(size, gs)};
  if (s.model == "bipartite") return {"bipartite-n" + std::to_string(size), random_bipartite(size, s.p, gs)};
  if (s.model == "mycielski") return {"mycielski-d" + std::to_string(size), mycielski_family(size)};
  if (s.model == "cycle") return {"cycle-n" + std::to_string(size), cycle(size)};
  if (s.model == "petersen") return {"petersen", petersen()};
  if (s.model == "grotzsch") return {"grotzsch", grotzsch()};
  return {"grotzsch-x" + std::to_string(size), disjoint_copies(grotzsch(), size)};
}

inline ListAssignment make_lists(const ExperimentSpec& s, const Graph& g, std::uint64_t seed) {
  const auto& src = *s.lists;
  std::size_t k = src.size;
  if (k == 0) {
    if (s.algorithm == Algorithm::ListPeel) {
      k = g.order() >= 3 ? std::size_t(std::ceil(vertex_list_bound(double(g.order()), s.cfg))) : 1;
    } else {
      k = g.size() >= 3 ? std::size_t(std::ceil(split_floors(double(g.size()), s.cfg.eps).k)) : 2;
    }
    k = std::size_t(std::ceil(src.scale * double(k)));
  }
  if (src.kind == "uniform") return ListAssignment::uniform(g.order(), k);
  const auto palette = std::max(k, std::size_t(std::ceil(src.palette_factor * double(k))));
  return ListAssignment::random(g.order(), k, palette, derive_seed(Seed{seed}, 2));
}

// Bound matching the algorithm's regime; NaN outside its domain.
inline double regime_bound(const ExperimentSpec& s, const Graph& g, std::size_t genus) {
  const double n = double(g.order());
  const double m = double(g.size());
  switch (s.algorithm) {
    case Algorithm::Peel:
    case Algorithm::Dsatur: return n >= 3 ? vertex_chi_bound(n, s.cfg) : std::nan("");
    case Algorithm::ListPeel: return n >= 3 ? vertex_list_bound(n, s.cfg) : std::nan("");
    case Algorithm::Edge: return m >= 3 ? edge_chi_bound(m, s.cfg) : std::nan("");
    case Algorithm::ListEdge: return m >= 3 ? edge_list_bound(m, s.cfg) : std::nan("");
    case Algorithm::Genus:
      return s.lists ? genus_list_bound(std::max<double>(double(genus), 2.0), s.cfg)
                     : genus_chi_bound(std::max<double>(double(genus), 2.0), s.cfg);
  }
  return std::nan("");
}

inline std::string error_name(const std::exception& e) {
  const std::string what = e.what();
  const auto colon = what.find(':');
  return colon == std::string::npos ? "Error" : what.substr(0, colon);
}

struct CellOutput {
  ResultRow row;
  std::optional<ColoringRecord> record;
  Graph graph;
};

inline CellOutput run_cell(const ExperimentSpec& s, std::size_t size, std::uint64_t seed) {
  CellOutput out;
  auto& row = out.row;
  row.seed = seed;
  row.algorithm = algorithm_name(s.algorithm);
  const auto start = std::chrono::steady_clock::now();
  try {
    auto inst = make_instance(s, size, seed);
    row.instance_id = inst.id + "-s" + std::to_string(seed);
    const Graph& g = inst.graph;
    row.n = g.order();
    row.m = g.size();
    const std::size_t genus = s.genus.value_or(least_consistent_genus(g));
    row.bound = regime_bound(s, g, genus);
    const Seed as = derive_seed(Seed{seed}, 1);

    std::optional<Coloring> coloring;
    PeelTrace trace;
    std::optional<ListAssignment> lists;
    if (s.lists) lists = make_lists(s, g, seed);
    switch (s.algorithm) {
      case Algorithm::Peel: {
        auto r = peel_and_color(g, s.cfg);
        coloring = std::move(r.coloring);
        trace = std::move(r.trace);
        break;
      }
      case Algorithm::Dsatur: coloring = dsatur(g); break;
      case Algorithm::Edge: {
        auto r = edge_partition_color(g, s.cfg, as);
        coloring = std::move(r.coloring);
        trace = std::move(r.trace);
        break;
      }
      case Algorithm::ListPeel: {
        auto r = list_peel_and_color(g, *lists, s.cfg, as);
        coloring = std::move(r.coloring);
        trace = std::move(r.trace);
        break;
      }
      case Algorithm::ListEdge: {
        auto r = list_edge_partition_color(g, *lists, s.cfg, as);
        coloring = std::move(r.coloring);
        trace = std::move(r.trace);
        break;
      }
      case Algorithm::Genus: {
        auto r = lists ? genus_color(g, genus, *lists, s.cfg, as) : genus_color(g, genus, s.cfg, as);
        coloring = std::move(r.coloring);
        trace = std::move(r.trace);
        break;
      }
    }
    row.peel_count = trace.size();
    for (const auto& t : trace) row.largest_peel = std::max(row.largest_peel, t.peeled);
    if (!coloring) {
      row.verdict = "failure";
    } else {
      row.colours_used = colors_used(*coloring);
      const bool proper = !validate_coloring(g, *coloring) && (!lists || respects_lists(*coloring, *lists));
      row.verdict = proper ? "proper" : "improper";
      if (row.colours_used > 0 && !std::isnan(row.bound)) row.bound_ratio = row.bound / double(row.colours_used);
      if (s.oracle && g.order() <= OracleBudget{}.max_chromatic) {
        row.exact_chi = exact_chromatic(g);
        if (proper && row.colours_used < *row.exact_chi) row.verdict = "below_chi";
      }
      out.record = ColoringRecord{*coloring, trace, row.algorithm, seed};
    }
    out.graph = g;
  } catch (const Error& e) {
    row.verdict = "error:" + error_name(e);
  } catch (const std::logic_error& e) {
    row.verdict = "error:logic";
  }
  if (row.instance_id.empty()) row.instance_id = s.model + "-" + std::to_string(size) + "-s" + std::to_string(seed);
  row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// Runs every (size, seed) cell. Rows come back in spec order (sizes outer,
// seeds inner) whatever the completion order. With artifacts set, each row
// also leaves <id>.edges and <id>-<algo>.json behind.
inline std::vector<ResultRow> run_experiment(const ExperimentSpec& s) {
  if (s.seeds.empty()) throw InvalidSpec("seed list is empty");
  std::vector<std::pair<std::size_t, std::uint64_t>> cells;
  for (auto size : s.sizes) {
    for (auto seed : s.seeds) cells.emplace_back(size, seed);
  }
  std::vector<CellOutput> outputs(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      outputs[i] = run_cell(s, cells[i].first, cells[i].second);
    }
  };
  const std::size_t threads = std::min(thread_cap(), cells.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!s.artifacts.empty()) std::filesystem::create_directories(s.artifacts);
  std::vector<ResultRow> rows;
  rows.reserve(outputs.size());
  for (auto& o : outputs) {
    if (!s.artifacts.empty() && o.record) {
      const auto base = std::filesystem::path(s.artifacts) / o.row.instance_id;
      write_graph_file(base.string() + ".edges", o.graph);
      write_coloring_file(base.string() + "-" + o.row.algorithm + ".json", *o.record);
    }
    rows.push_back(std::move(o.row));
  }
  if (!s.output.empty()) {
    std::ofstream out(s.output);
    if (!out) throw ParseError("cannot write " + s.output);
    write_csv(out, rows);
  }
  return rows;
}

// Timing per cell, as JSON: wall-clock, colours and trace size.
inline nlohmann::json bench(const ExperimentSpec& s) {
  nlohmann::json out = nlohmann::json::array();
  for (auto size : s.sizes) {
    for (auto seed : s.seeds) {
      const auto cell = run_cell(s, size, seed);
      out.push_back({{"instance_id", cell.row.instance_id},
                     {"algorithm", cell.row.algorithm},
                     {"n", cell.row.n},
                     {"m", cell.row.m},
                     {"seed", seed},
                     {"colours_used", cell.row.colours_used},
                     {"peel_count", cell.row.peel_count},
                     {"verdict", cell.row.verdict},
                     {"wall_ms", cell.row.runtime_ms}});
    }
  }
  return out;
}

}  // namespace tfc
