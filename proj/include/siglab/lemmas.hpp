#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "siglab/norm.hpp"
#include "siglab/sig.hpp"

namespace siglab {

/// Slack allowed on the conclusion side of the separation checks.
inline constexpr double kSeparationSlack = 1e-9;

/// Radial retraction onto B(o, 2): identity inside, x ↦ 2x/‖x‖ outside.
inline Vector project_ball2(const NormSpec& norm, VectorView x) {
  const double len = evaluate_norm(norm, x);
  Vector out(x.begin(), x.end());
  if (len <= 2.0) return out;
  for (double& t : out) t = 2.0 * t / len;
  return out;
}

/// ‖a/‖a‖ − b/‖b‖‖ − (‖a − b‖ − |‖a‖ − ‖b‖|) / ‖b‖, which is never negative.
inline double bow_and_arrow_gap(const NormSpec& norm, VectorView a, VectorView b) {
  const double na = evaluate_norm(norm, a);
  const double nb = evaluate_norm(norm, b);
  if (na == 0.0 || nb == 0.0) throw Error("bow-and-arrow needs nonzero vectors");
  const Vector ua = unit_vector(norm, a);
  const Vector ub = unit_vector(norm, b);
  const double lhs = distance(norm, ua, ub);
  const double rhs = (distance(norm, a, b) - std::abs(na - nb)) / nb;
  return lhs - rhs;
}

/// Two balls B(v1, lambda1), B(v2, lambda2) in the frame where the reference
/// ball is B(o, 1).
struct SatelliteConfig {
  Vector v1;
  double lambda1 = 0.0;
  Vector v2;
  double lambda2 = 0.0;
};

inline bool satellite_hypotheses(const SatelliteConfig& cfg, const NormSpec& norm) {
  const double big = std::max(cfg.lambda1, cfg.lambda2);
  if (cfg.lambda1 < 0.0 || cfg.lambda2 < 0.0 || big < 1.0) return false;
  if (distance(norm, cfg.v1, cfg.v2) < big) return false;
  return evaluate_norm(norm, cfg.v1) <= cfg.lambda1 + 1.0 &&
         evaluate_norm(norm, cfg.v2) <= cfg.lambda2 + 1.0;
}

/// ‖π(v1) − π(v2)‖, defined only for configurations meeting the hypotheses.
inline double satellite_separation(const SatelliteConfig& cfg, const NormSpec& norm) {
  if (!satellite_hypotheses(cfg, norm)) {
    throw Error("satellite hypotheses violated");
  }
  return distance(norm, project_ball2(norm, cfg.v1), project_ball2(norm, cfg.v2));
}

/// Rejection sampler for hypothesis-satisfying configurations: radii in
/// [0.5, 3], centers in [−4, 4]^d.
template <typename Rng>
SatelliteConfig sample_satellite_config(Rng& rng, const NormSpec& norm,
                                        std::size_t max_attempts = 1'000'000) {
  std::uniform_real_distribution<double> lam(0.5, 3.0);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  SatelliteConfig cfg;
  cfg.v1.resize(norm.dim);
  cfg.v2.resize(norm.dim);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    cfg.lambda1 = lam(rng);
    cfg.lambda2 = lam(rng);
    for (auto& t : cfg.v1) t = coord(rng);
    for (auto& t : cfg.v2) t = coord(rng);
    if (satellite_hypotheses(cfg, norm)) return cfg;
  }
  throw Error("satellite sampler exhausted its attempt budget");
}

struct CountingReport {
  std::size_t center = 0;
  std::size_t k = 0;
  std::size_t degree = 0;
  std::size_t interior_count = 0;  // points of V in int B(c, r_c), c excluded
  std::vector<std::size_t> class_outside_sizes;  // |N_i \ int B(c, r_c)| per color
  double min_separation = kInfinity;  // over projected pairs within a color class
  std::size_t decomposition_bound = 0;  // Σ_i |N_i \ int B| + (k − 1)
  bool interior_ok = false;
  bool separation_ok = false;
  bool decomposition_ok = false;
  bool passed = false;
};

/// Replays the final counting step of the degree bound at `center`.
///
/// Works in the frame y = (p − c) / r_c. Counts points strictly inside the
/// unit ball (at most k − 1), projects each color class of the center's
/// neighbors lying outside the open unit ball through π and checks pairwise
/// separation ≥ 1 − kSeparationSlack, and checks the degree decomposition.
/// `coloring` must be a proper coloring of the auxiliary graph with at most
/// k colors.
inline CountingReport counting_check(const PointSet& ps, const RadiusAssignment& radii,
                                     const InfluenceGraph& ksig, const Coloring& coloring,
                                     std::size_t center, const NormSpec& norm) {
  check_point_set(ps);
  detail::check_radii(ps, radii);
  const std::size_t m = ps.size();
  const std::size_t k = radii.k;
  if (ksig.num_vertices() != m) throw Error("graph size does not match point set");
  if (center >= m) throw Error("center index out of range");

  const auto order = sort_by_radius(radii);
  if (center != order[0] && center != order[1]) {
    throw Error("center is not one of the two smallest-radius vertices");
  }
  const auto aux = build_aux_graph(ps, radii, norm);
  if (!is_proper_coloring(aux, coloring) || coloring.num_colors > static_cast<int>(k)) {
    throw Error("invalid coloring of the auxiliary graph");
  }
  const double rc = radii.radii[center];
  if (!(rc > 0.0)) throw Error("center has zero radius; the rescaled frame is undefined");

  auto to_frame = [&](std::size_t p) {
    Vector y(ps.dim);
    for (std::size_t t = 0; t < ps.dim; ++t) y[t] = (ps[p][t] - ps[center][t]) / rc;
    return y;
  };

  CountingReport rep;
  rep.center = center;
  rep.k = k;
  rep.degree = ksig.degree(center);
  for (std::size_t p = 0; p < m; ++p) {
    if (p != center && distance(norm, ps[center], ps[p]) < rc) ++rep.interior_count;
  }

  std::map<int, std::vector<Vector>> classes;
  for (int c = 1; c <= coloring.num_colors; ++c) classes[c];
  for (auto p : ksig.neighbors(center)) {
    // Classified on unscaled distances so the test agrees bit-for-bit with
    // the comparisons that produced the radii.
    if (distance(norm, ps[center], ps[p]) >= rc) {
      classes[coloring.colors[p]].push_back(project_ball2(norm, to_frame(p)));
    }
  }
  std::size_t outside = 0;
  for (const auto& [color, pts] : classes) {
    rep.class_outside_sizes.push_back(pts.size());
    outside += pts.size();
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        rep.min_separation = std::min(rep.min_separation, distance(norm, pts[a], pts[b]));
      }
    }
  }
  rep.decomposition_bound = outside + (k - 1);
  rep.interior_ok = rep.interior_count + 1 <= k;
  rep.separation_ok = rep.min_separation >= 1.0 - kSeparationSlack;
  rep.decomposition_ok = rep.degree <= rep.decomposition_bound;
  rep.passed = rep.interior_ok && rep.separation_ok && rep.decomposition_ok;
  return rep;
}

}  // namespace siglab
