#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "siglab/norm.hpp"

namespace siglab {

/// Finite ordered family of points c_0..c_{m-1} in R^dim. Duplicates allowed.
struct PointSet {
  std::size_t dim = 0;
  std::vector<Vector> points;

  std::size_t size() const { return points.size(); }
  const Vector& operator[](std::size_t i) const { return points[i]; }
};

inline void check_point_set(const PointSet& ps) {
  if (ps.size() < 2) throw Error("point set needs at least 2 points");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].size() != ps.dim) {
      throw Error("point " + std::to_string(i) + " has dimension " +
                  std::to_string(ps[i].size()) + ", expected " + std::to_string(ps.dim));
    }
  }
}

/// radii[i] is the distance from c_i to its k-th nearest other point,
/// counted with multiplicity.
struct RadiusAssignment {
  std::size_t k = 0;
  std::vector<double> radii;

  std::size_t size() const { return radii.size(); }
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph on 0..n-1. Edges are stored once with i < j and
/// kept in lexicographic order.
class InfluenceGraph {
 public:
  InfluenceGraph() = default;

  InfluenceGraph(std::size_t n, std::vector<Edge> edges) : n_(n), adjacency_(n) {
    for (auto& e : edges) {
      if (e.first == e.second) throw Error("self-loop in graph");
      if (e.first >= n || e.second >= n) throw Error("edge endpoint out of range");
      if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (const auto& [i, j] : edges_) {
      adjacency_[i].push_back(j);
      adjacency_[j].push_back(i);
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }

  bool has_edge(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
  }

  bool is_subgraph_of(const InfluenceGraph& other) const {
    return n_ == other.n_ &&
           std::includes(other.edges_.begin(), other.edges_.end(), edges_.begin(), edges_.end());
  }

  friend bool operator==(const InfluenceGraph& a, const InfluenceGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

struct Coloring {
  std::vector<int> colors;  // 1-based
  int num_colors = 0;
};

/// Execution knobs. Results never depend on `threads`.
struct ExecPolicy {
  unsigned threads = 1;
};

/// Edge-rule knobs for the k-SIG.
///
/// `tolerance` widens the closed-ball test to ‖c_i − c_j‖ ≤ r_i + r_j + tol,
/// which departs from the exact definition and exists only for noisy inputs.
/// `strict_fault` replaces ≤ by < and is a fault-injection switch for
/// exercising the verification suite; never set it in real use.
struct KsigOptions {
  double tolerance = 0.0;
  bool strict_fault = false;
};

namespace detail {

/// Runs body(row) for every row in [0, rows), split into contiguous chunks.
template <typename Body>
void parallel_rows(std::size_t rows, unsigned threads, Body&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, rows));
  if (workers == 1) {
    for (std::size_t r = 0; r < rows; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t r = w; r < rows; r += workers) body(r);
    });
  }
  for (auto& t : pool) t.join();
}

inline void check_radii(const PointSet& ps, const RadiusAssignment& radii) {
  if (radii.size() != ps.size()) {
    throw Error("radius count " + std::to_string(radii.size()) + " does not match point count " +
                std::to_string(ps.size()));
  }
}

template <typename Keep>
InfluenceGraph build_pair_graph(const PointSet& ps, const NormSpec& norm, ExecPolicy exec,
                                Keep&& keep) {
  check_point_set(ps);
  const std::size_t m = ps.size();
  std::vector<std::vector<Edge>> rows(m);
  parallel_rows(m, exec.threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (keep(i, j, distance(norm, ps[i], ps[j]))) rows[i].emplace_back(i, j);
    }
  });
  std::vector<Edge> edges;
  for (auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
  return InfluenceGraph(m, std::move(edges));
}

}  // namespace detail

inline RadiusAssignment kth_radii(const PointSet& ps, std::size_t k, const NormSpec& norm,
                                  ExecPolicy exec = {}) {
  check_point_set(ps);
  if (k == 0) throw Error("k must be positive");
  if (ps.size() <= k) {
    throw Error("insufficient points for k: need more than " + std::to_string(k) + ", have " +
                std::to_string(ps.size()));
  }
  if (norm.dim != ps.dim) throw Error("dimension mismatch between norm and point set");
  const std::size_t m = ps.size();
  RadiusAssignment out{k, std::vector<double>(m)};
  detail::parallel_rows(m, exec.threads, [&](std::size_t i) {
    std::vector<double> dist;
    dist.reserve(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) dist.push_back(distance(norm, ps[i], ps[j]));
    }
    auto kth = dist.begin() + static_cast<std::ptrdiff_t>(k - 1);
    std::nth_element(dist.begin(), kth, dist.end());
    out.radii[i] = *kth;
  });
  return out;
}

/// k-th closed sphere-of-influence graph: {i,j} iff the closed balls
/// B(c_i, r_i) and B(c_j, r_j) meet, i.e. ‖c_i − c_j‖ ≤ r_i + r_j.
inline InfluenceGraph build_ksig(const PointSet& ps, const RadiusAssignment& radii,
                                 const NormSpec& norm, KsigOptions opts = {},
                                 ExecPolicy exec = {}) {
  detail::check_radii(ps, radii);
  const auto& r = radii.radii;
  return detail::build_pair_graph(ps, norm, exec, [&](std::size_t i, std::size_t j, double d) {
    const double reach = r[i] + r[j] + opts.tolerance;
    return opts.strict_fault ? d < reach : d <= reach;
  });
}

/// Auxiliary graph: {i,j} iff ‖c_i − c_j‖ < max(r_i, r_j). Always a subgraph
/// of the k-SIG built from the same radii.
inline InfluenceGraph build_aux_graph(const PointSet& ps, const RadiusAssignment& radii,
                                      const NormSpec& norm, ExecPolicy exec = {}) {
  detail::check_radii(ps, radii);
  const auto& r = radii.radii;
  return detail::build_pair_graph(ps, norm, exec, [&](std::size_t i, std::size_t j, double d) {
    return d < std::max(r[i], r[j]);
  });
}

/// Indices by nondecreasing radius, ties by index.
inline std::vector<std::size_t> sort_by_radius(const RadiusAssignment& radii) {
  std::vector<std::size_t> order(radii.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return radii.radii[a] < radii.radii[b];
  });
  return order;
}

/// First-fit coloring along `order`: each vertex takes the smallest positive
/// color not used by an already-colored neighbor.
inline Coloring greedy_color(const InfluenceGraph& g, std::span<const std::size_t> order) {
  const std::size_t n = g.num_vertices();
  if (order.size() != n) throw Error("order is not a permutation: wrong length");
  std::vector<char> seen(n, 0);
  for (auto v : order) {
    if (v >= n || seen[v]) throw Error("order is not a permutation");
    seen[v] = 1;
  }

  Coloring out{std::vector<int>(n, 0), 0};
  std::vector<std::size_t> stamp(n + 2, 0);  // stamp[c] == step+1 marks color c as taken
  std::size_t step = 0;
  for (auto v : order) {
    ++step;
    for (auto u : g.neighbors(v)) {
      const int c = out.colors[u];
      if (c > 0 && static_cast<std::size_t>(c) <= n) stamp[static_cast<std::size_t>(c)] = step;
    }
    int c = 1;
    while (stamp[static_cast<std::size_t>(c)] == step) ++c;
    out.colors[v] = c;
    out.num_colors = std::max(out.num_colors, c);
  }
  return out;
}

inline bool is_proper_coloring(const InfluenceGraph& g, const Coloring& coloring) {
  if (coloring.colors.size() != g.num_vertices()) return false;
  for (int c : coloring.colors) {
    if (c < 1 || c > coloring.num_colors) return false;
  }
  return std::none_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return coloring.colors[e.first] == coloring.colors[e.second];
  });
}

inline std::vector<std::size_t> degree_sequence(const InfluenceGraph& g) {
  std::vector<std::size_t> deg(g.num_vertices());
  for (std::size_t v = 0; v < deg.size(); ++v) deg[v] = g.degree(v);
  return deg;
}

/// 5^d, saturating at the largest uint64.
inline std::uint64_t pow5(std::size_t d) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / 5) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= 5;
  }
  return out;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

struct VerificationReport {
  std::vector<std::size_t> degree_sequence;
  std::pair<std::size_t, std::size_t> witness_vertices{0, 0};
  std::uint64_t bound = 0;  // 5^d k
  std::size_t low_degree_count = 0;  // vertices with degree < bound
  bool passed = false;
  std::uint64_t edge_bound = 0;  // (5^d k − 1) n
  std::size_t edge_count = 0;
  bool edge_bound_ok = false;
};

/// Checks the minimum-degree guarantee on a k-SIG: the two smallest-radius
/// vertices (stable order) and at least two vertices overall have degree
/// below 5^d k. The edge-count bound is recorded separately.
inline VerificationReport verify_theorem(const InfluenceGraph& g, const RadiusAssignment& radii,
                                         std::size_t d, std::size_t k) {
  VerificationReport rep;
  const std::size_t n = g.num_vertices();
  rep.degree_sequence = degree_sequence(g);
  rep.bound = saturating_mul(pow5(d), k);
  rep.edge_bound = saturating_mul(rep.bound - 1, n);
  rep.edge_count = g.num_edges();
  rep.edge_bound_ok = rep.edge_count <= rep.edge_bound;
  if (radii.size() != n || n < 2) return rep;

  const auto order = sort_by_radius(radii);
  rep.witness_vertices = {order[0], order[1]};
  for (auto deg : rep.degree_sequence) {
    if (deg < rep.bound) ++rep.low_degree_count;
  }
  rep.passed = rep.degree_sequence[order[0]] < rep.bound &&
               rep.degree_sequence[order[1]] < rep.bound && rep.low_degree_count >= 2;
  return rep;
}

struct PipelineResult {
  RadiusAssignment radii;
  InfluenceGraph graph;
  VerificationReport report;
};

inline PipelineResult ksig_pipeline(const PointSet& ps, std::size_t k, const NormSpec& norm,
                                    KsigOptions opts = {}, ExecPolicy exec = {}) {
  PipelineResult out;
  out.radii = kth_radii(ps, k, norm, exec);
  out.graph = build_ksig(ps, out.radii, norm, opts, exec);
  out.report = verify_theorem(out.graph, out.radii, ps.dim, k);
  return out;
}

}  // namespace siglab
