#pragma once

// Graph, list and colouring file formats.
//
//   DIMACS .col   "p edge n m" header, "e u v" lines with 1-indexed vertices,
//                 "c" comment lines ignored. The writer emits sorted edges.
//   edge list     first line "n m", then one 0-indexed "u v" per line.
//   list file     line i holds the space-separated colour ids of vertex i.
//   colouring     JSON object, see to_json(ColoringRecord).

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "tfc/error.hpp"
#include "tfc/graph.hpp"
#include "tfc/lists.hpp"
#include "tfc/trace.hpp"

namespace tfc {

enum class GraphFormat { Dimacs, EdgeList };

inline GraphFormat format_for_path(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".col") || ends_with(".dimacs") ? GraphFormat::Dimacs : GraphFormat::EdgeList;
}

inline Graph read_dimacs(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  std::size_t declared_m = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream iss(line);
    std::string tag;
    iss >> tag;
    if (tag == "p") {
      std::string kind;
      iss >> kind >> n >> declared_m;
      if (!iss || (kind != "edge" && kind != "edges" && kind != "col")) {
        throw ParseError("bad DIMACS header at line " + std::to_string(lineno));
      }
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw ParseError("edge before header at line " + std::to_string(lineno));
      std::int64_t u = 0;
      std::int64_t v = 0;
      iss >> u >> v;
      if (!iss || u < 1 || v < 1 || static_cast<std::size_t>(u) > n ||
          static_cast<std::size_t>(v) > n) {
        throw ParseError("bad edge at line " + std::to_string(lineno));
      }
      edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
    } else {
      throw ParseError("unknown line type '" + tag + "' at line " + std::to_string(lineno));
    }
  }
  if (!have_header) throw ParseError("missing DIMACS header");
  return Graph::from_edge_list(n, edges);
}

inline void write_dimacs(std::ostream& out, const Graph& g) {
  out << "p edge " << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

inline Graph read_edge_list(std::istream& in) {
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m)) throw ParseError("edge list must start with 'n m'");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::int64_t u = 0;
    std::int64_t v = 0;
    if (!(in >> u >> v)) throw ParseError("expected " + std::to_string(m) + " edges, got " +
                                          std::to_string(i));
    if (u < 0 || v < 0) throw ParseError("negative vertex id");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph::from_edge_list(n, edges);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return format_for_path(path) == GraphFormat::Dimacs ? read_dimacs(in) : read_edge_list(in);
}

inline void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  if (format_for_path(path) == GraphFormat::Dimacs) {
    write_dimacs(out, g);
  } else {
    write_edge_list(out, g);
  }
}

inline ListAssignment read_lists(std::istream& in, std::size_t n) {
  std::vector<std::vector<Color>> lists;
  std::string line;
  while (lists.size() < n && std::getline(in, line)) {
    std::istringstream iss(line);
    std::vector<Color> list;
    std::int64_t c = 0;
    while (iss >> c) {
      if (c < 0) throw ParseError("negative colour id on list line " + std::to_string(lists.size() + 1));
      list.push_back(static_cast<Color>(c));
    }
    if (!iss.eof()) throw ParseError("bad token on list line " + std::to_string(lists.size() + 1));
    lists.push_back(std::move(list));
  }
  if (lists.size() != n) {
    throw ParseError("list file has " + std::to_string(lists.size()) + " lines for " +
                     std::to_string(n) + " vertices");
  }
  return ListAssignment(std::move(lists));
}

inline ListAssignment read_lists_file(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_lists(in, n);
}

inline void write_lists(std::ostream& out, const ListAssignment& lists) {
  for (const auto& l : lists.lists()) {
    for (std::size_t i = 0; i < l.size(); ++i) out << (i ? " " : "") << l[i];
    out << '\n';
  }
}

struct ColoringRecord {
  Coloring coloring;
  PeelTrace trace;
  std::string algo;
  std::uint64_t seed = 0;
};

inline nlohmann::json to_json(const ColoringRecord& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : r.trace) {
    trace.push_back({{"pivot", t.pivot},
                     {"colour", t.color},
                     {"peeled", t.peeled},
                     {"remaining", t.remaining},
                     {"threshold", t.threshold}});
  }
  return {{"n", r.coloring.colors.size()},
          {"palette_size", r.coloring.palette_size},
          {"colors", r.coloring.colors},
          {"trace", trace},
          {"algo", r.algo},
          {"seed", r.seed}};
}

inline ColoringRecord coloring_from_json(const nlohmann::json& j) {
  try {
    ColoringRecord r;
    r.coloring.colors = j.at("colors").get<std::vector<Color>>();
    r.coloring.palette_size = j.at("palette_size").get<std::size_t>();
    if (j.at("n").get<std::size_t>() != r.coloring.colors.size()) {
      throw ParseError("'n' disagrees with colour array length");
    }
    r.algo = j.value("algo", std::string{});
    r.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("trace")) {
      for (const auto& t : j.at("trace")) {
        r.trace.push_back({t.at("pivot").get<Vertex>(), t.at("colour").get<Color>(),
                           t.at("peeled").get<std::size_t>(), t.value("remaining", std::size_t{0}),
                           t.at("threshold").get<double>()});
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("colouring JSON: ") + e.what());
  }
}

inline void write_coloring_file(const std::string& path, const ColoringRecord& r) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << to_json(r).dump(1) << '\n';
}

inline ColoringRecord read_coloring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("colouring JSON: ") + e.what());
  }
  return coloring_from_json(j);
}

}  // namespace tfc
