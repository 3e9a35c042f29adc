#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "siglab/norm.hpp"
#include "siglab/packing.hpp"
#include "siglab/sig.hpp"

namespace siglab {

using json = nlohmann::json;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s == "inf" || s == "Inf" || s == "INF") return kInfinity;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                  : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write failed for " + path);
}

inline double parse_exponent(std::string_view s) {
  const auto p = parse_double(s);
  if (!p) throw Error("bad exponent '" + std::string(s) + "'");
  return *p;
}

}  // namespace detail

/// Polytope norm from JSON {"functionals": [[a11, ..., a1d], ...]}.
inline NormSpec polytope_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("functionals") || !doc["functionals"].is_array()) {
    throw Error("polytope file needs a \"functionals\" array");
  }
  std::vector<Vector> rows;
  for (const auto& row : doc["functionals"]) {
    if (!row.is_array()) throw Error("each functional must be an array");
    Vector a;
    for (const auto& t : row) {
      if (!t.is_number()) throw Error("non-numeric functional entry");
      a.push_back(t.get<double>());
    }
    rows.push_back(std::move(a));
  }
  return NormSpec::polytope(std::move(rows));
}

/// Parses "l1", "l2", "linf", "lp:<p>", "wlp:<p>:<w1,...,wd>" or
/// "poly:<path>". `dim` fixes the dimension of the unweighted families and
/// must agree with the weighted and polytope forms when nonzero. The result
/// is validated.
inline NormSpec parse_norm_spec(std::string_view text, std::size_t dim) {
  NormSpec spec;
  const auto parts = detail::split(text, ':');
  const auto head = parts.front();
  if (head == "l1" && parts.size() == 1) {
    spec = NormSpec::l1(dim);
  } else if (head == "l2" && parts.size() == 1) {
    spec = NormSpec::l2(dim);
  } else if (head == "linf" && parts.size() == 1) {
    spec = NormSpec::linf(dim);
  } else if (head == "lp" && parts.size() == 2) {
    spec = NormSpec::lp(detail::parse_exponent(parts[1]), dim);
  } else if (head == "wlp" && parts.size() == 3) {
    std::vector<double> weights;
    for (auto w : detail::split(parts[2], ',')) {
      const auto v = detail::parse_double(w);
      if (!v) throw Error("bad weight '" + std::string(w) + "'");
      weights.push_back(*v);
    }
    spec = NormSpec::weighted(detail::parse_exponent(parts[1]), std::move(weights));
  } else if (head == "poly" && parts.size() >= 2) {
    const auto path = std::string(text.substr(5));
    json doc;
    try {
      doc = json::parse(detail::read_file(path));
    } catch (const json::exception& e) {
      throw Error("polytope file " + path + ": " + e.what());
    }
    spec = polytope_from_json(doc);
  } else {
    throw Error("unknown norm spec '" + std::string(text) + "'");
  }
  if (dim != 0 && spec.dim != dim) {
    throw Error("norm dimension " + std::to_string(spec.dim) + " does not match " +
                std::to_string(dim));
  }
  const auto report = validate_norm_spec(spec);
  if (!report.ok()) throw Error("invalid norm '" + std::string(text) + "': " +
                                report.violations.front());
  return spec;
}

// ---------------------------------------------------------------------------
// Point sets

/// CSV: one point per line, comma-separated coordinates. Blank lines and
/// lines starting with '#' are skipped. `dim` of 0 infers the dimension from
/// the first row.
inline PointSet parse_points_csv(std::string_view text, std::size_t dim = 0) {
  PointSet ps{dim, {}};
  std::size_t line_no = 0;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    Vector p;
    for (auto field : detail::split(line, ',')) {
      const auto v = detail::parse_double(field);
      if (!v || !std::isfinite(*v)) {
        throw Error("non-numeric field at line " + std::to_string(line_no));
      }
      p.push_back(*v);
    }
    if (ps.dim == 0) ps.dim = p.size();
    if (p.size() != ps.dim) {
      if (ps.points.empty() && dim != 0) {
        throw Error("row at line " + std::to_string(line_no) + " has " +
                    std::to_string(p.size()) + " columns, expected dimension " +
                    std::to_string(dim));
      }
      throw Error("ragged row at line " + std::to_string(line_no));
    }
    ps.points.push_back(std::move(p));
  }
  check_point_set(ps);
  return ps;
}

/// JSON: {"dim": d, "points": [[...], ...]}. "dim" may be omitted.
inline PointSet parse_points_json(const json& doc, std::size_t dim = 0) {
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw Error("point file needs a \"points\" array");
  }
  PointSet ps{dim, {}};
  if (doc.contains("dim")) {
    const auto declared = doc["dim"].get<std::size_t>();
    if (dim != 0 && declared != dim) throw Error("declared dim does not match --dim");
    ps.dim = declared;
  }
  std::size_t idx = 0;
  for (const auto& row : doc["points"]) {
    if (!row.is_array()) throw Error("point " + std::to_string(idx) + " is not an array");
    Vector p;
    for (const auto& t : row) {
      if (!t.is_number()) throw Error("non-numeric field in point " + std::to_string(idx));
      p.push_back(t.get<double>());
    }
    if (ps.dim == 0) ps.dim = p.size();
    if (p.size() != ps.dim) throw Error("ragged row at point " + std::to_string(idx));
    ps.points.push_back(std::move(p));
    ++idx;
  }
  check_point_set(ps);
  return ps;
}

enum class PointFormat { csv, json };

inline PointFormat format_for_path(const std::string& path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? PointFormat::json
                                                                       : PointFormat::csv;
}

inline PointSet parse_points(const std::string& path, PointFormat format, std::size_t dim = 0) {
  const auto text = detail::read_file(path);
  if (format == PointFormat::csv) return parse_points_csv(text, dim);
  try {
    return parse_points_json(json::parse(text), dim);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

/// Shortest round-trip representation of a double.
inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline std::string points_to_csv(const PointSet& ps) {
  std::string out;
  for (const auto& p : ps.points) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out += ',';
      out += format_double(p[j]);
    }
    out += '\n';
  }
  return out;
}

inline json points_to_json(const PointSet& ps) {
  return json{{"dim", ps.dim}, {"points", ps.points}};
}

enum class Distribution { uniform_box, gaussian, clustered };

inline Distribution parse_distribution(std::string_view name) {
  if (name == "uniform-box") return Distribution::uniform_box;
  if (name == "gaussian") return Distribution::gaussian;
  if (name == "clustered") return Distribution::clustered;
  throw Error("unknown distribution '" + std::string(name) + "'");
}

/// Seeded point cloud: uniform in [0,1]^d, standard Gaussian, or three
/// Gaussian blobs (sigma 0.05) with centers uniform in [0,1]^d.
inline PointSet generate_points(std::size_t n, std::size_t d, Distribution dist,
                                std::uint64_t seed) {
  if (n < 2) throw Error("need at least 2 points");
  if (d == 0) throw Error("dimension must be positive");
  std::mt19937_64 rng(seed);
  PointSet ps{d, std::vector<Vector>(n, Vector(d))};
  switch (dist) {
    case Distribution::uniform_box: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (auto& p : ps.points)
        for (auto& t : p) t = u(rng);
      break;
    }
    case Distribution::gaussian: {
      std::normal_distribution<double> g(0.0, 1.0);
      for (auto& p : ps.points)
        for (auto& t : p) t = g(rng);
      break;
    }
    case Distribution::clustered: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::normal_distribution<double> g(0.0, 0.05);
      std::vector<Vector> centers(3, Vector(d));
      for (auto& c : centers)
        for (auto& t : c) t = u(rng);
      std::uniform_int_distribution<std::size_t> pick(0, centers.size() - 1);
      for (auto& p : ps.points) {
        const auto& c = centers[pick(rng)];
        for (std::size_t j = 0; j < d; ++j) p[j] = c[j] + g(rng);
      }
      break;
    }
  }
  return ps;
}

// ---------------------------------------------------------------------------
// Graphs

struct GraphDocument {
  std::size_t k = 0;
  InfluenceGraph graph;
  RadiusAssignment radii;
};

/// {"n", "k", "edges": [[i,j], ...] (i < j, lexicographic), "radii": [...]}.
inline json graph_to_json(const InfluenceGraph& g, const RadiusAssignment& radii) {
  json edges = json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
  return json{{"n", g.num_vertices()}, {"k", radii.k}, {"edges", std::move(edges)},
              {"radii", radii.radii}};
}

inline GraphDocument graph_from_json(const json& doc) {
  for (const char* key : {"n", "k", "edges", "radii"}) {
    if (!doc.contains(key)) throw Error(std::string("graph document lacks \"") + key + "\"");
  }
  GraphDocument out;
  const auto n = doc["n"].get<std::size_t>();
  out.k = doc["k"].get<std::size_t>();
  std::vector<Edge> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2) throw Error("edge must be a pair");
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  out.graph = InfluenceGraph(n, std::move(edges));
  out.radii = RadiusAssignment{out.k, doc["radii"].get<std::vector<double>>()};
  if (out.radii.size() != n) throw Error("radius count does not match n");
  return out;
}

/// Undirected DOT; vertices carry their radius, one line per edge.
inline std::string graph_to_dot(const InfluenceGraph& g, const RadiusAssignment& radii) {
  std::string out = "graph ksig {\n";
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    out += "  " + std::to_string(v) + " [label=\"" + std::to_string(v) + "\\nr=";
    out += v < radii.size() ? format_double(radii.radii[v]) : std::string("?");
    out += "\"];\n";
  }
  for (const auto& [i, j] : g.edges()) {
    out += "  " + std::to_string(i) + " -- " + std::to_string(j) + ";\n";
  }
  out += "}\n";
  return out;
}

enum class GraphFormat { json, dot };

inline void export_graph(const InfluenceGraph& g, const RadiusAssignment& radii,
                         GraphFormat format, const std::string& path) {
  detail::write_file(path, format == GraphFormat::json ? graph_to_json(g, radii).dump() + "\n"
                                                       : graph_to_dot(g, radii));
}

inline json packing_to_json(const PackingConfig& cfg) {
  return json{{"points", cfg.points}};
}

}  // namespace siglab
