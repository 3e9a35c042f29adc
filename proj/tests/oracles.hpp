#pragma once

// Test-only reference computations, written independently of the library's
// selection and pair loops.

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "siglab/norm.hpp"
#include "siglab/sig.hpp"

namespace oracle {

using siglab::PointSet;
using siglab::Vector;

/// Plain ℓp distance straight from the formula (p = 0 means ∞).
inline double lp_distance(const Vector& a, const Vector& b, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = std::abs(a[i] - b[i]);
    acc = p == 0.0 ? std::max(acc, t) : acc + std::pow(t, p);
  }
  return p == 0.0 ? acc : std::pow(acc, 1.0 / p);
}

/// k-th smallest distance from every point, by sorting the full list.
template <typename Dist>
std::vector<double> radii(const PointSet& ps, std::size_t k, Dist&& dist) {
  std::vector<double> out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < ps.size(); ++j)
      if (j != i) row.push_back(dist(ps[i], ps[j]));
    std::sort(row.begin(), row.end());
    out.push_back(row[k - 1]);
  }
  return out;
}

/// Edge set of the closed-ball graph by checking all pairs.
template <typename Dist>
std::set<std::pair<std::size_t, std::size_t>> ksig_edges(const PointSet& ps,
                                                         const std::vector<double>& r,
                                                         Dist&& dist) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (dist(ps[i], ps[j]) <= r[i] + r[j]) out.emplace(i, j);
  return out;
}

template <typename Dist>
std::set<std::pair<std::size_t, std::size_t>> aux_edges(const PointSet& ps,
                                                        const std::vector<double>& r,
                                                        Dist&& dist) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (dist(ps[i], ps[j]) < std::max(r[i], r[j])) out.emplace(i, j);
  return out;
}

inline std::set<std::pair<std::size_t, std::size_t>> edge_set(const siglab::InfluenceGraph& g) {
  return {g.edges().begin(), g.edges().end()};
}

inline PointSet line(std::initializer_list<double> xs) {
  PointSet ps{1, {}};
  for (double x : xs) ps.points.push_back({x});
  return ps;
}

}  // namespace oracle
