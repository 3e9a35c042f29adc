#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "siglab/norm.hpp"
#include "siglab/sig.hpp"

namespace siglab {

/// Absolute tolerance for packing-witness validation.
inline constexpr double kPackingTol = 1e-12;

/// Candidate witness for the packing number: points of B(o, 2), pairwise at
/// distance ≥ 1, one of them the origin.
struct PackingConfig {
  NormSpec norm;
  std::vector<Vector> points;

  std::size_t size() const { return points.size(); }
};

struct PackingValidation {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

inline PackingValidation validate_packing(const PackingConfig& cfg) {
  PackingValidation out;
  const auto& pts = cfg.points;
  for (const auto& p : pts) {
    if (p.size() != cfg.norm.dim) {
      out.violations.emplace_back("point dimension does not match norm");
      return out;
    }
  }
  bool has_origin = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double len = evaluate_norm(cfg.norm, pts[i]);
    if (len > 2.0 + kPackingTol) {
      out.violations.emplace_back("point " + std::to_string(i) + " outside B(o,2)");
    }
    if (len <= kPackingTol) has_origin = true;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (distance(cfg.norm, pts[i], pts[j]) < 1.0 - kPackingTol) {
        out.violations.emplace_back("points " + std::to_string(i) + " and " + std::to_string(j) +
                                    " closer than 1");
      }
    }
  }
  if (!has_origin) out.violations.emplace_back("origin absent");
  return out;
}

struct PackingBudget {
  std::uint64_t seed = 1;
  std::size_t restarts = 20;
  std::size_t candidates = 100'000;  // sampled points per restart
  unsigned threads = 1;
};

namespace detail {

/// Points Σ z_j e_j / ‖e_j‖ with integer z inside B(o, 2), origin excluded.
inline std::vector<Vector> axis_lattice_candidates(const NormSpec& norm) {
  const std::size_t d = norm.dim;
  Vector step(d);
  for (std::size_t j = 0; j < d; ++j) {
    Vector e(d, 0.0);
    e[j] = 1.0;
    step[j] = 1.0 / evaluate_norm(norm, e);
  }
  const Vector box = ball_bounding_box(norm, 2.0);
  std::vector<long> lo(d), hi(d), z(d);
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) {
    hi[j] = static_cast<long>(std::floor(box[j] / step[j] + 1e-9));
    lo[j] = -hi[j];
    z[j] = lo[j];
    total *= static_cast<std::size_t>(hi[j] - lo[j] + 1);
    if (total > 2'000'000) return {};  // too many lattice points to be useful
  }
  std::vector<Vector> out;
  for (std::size_t n = 0; n < total; ++n) {
    Vector p(d);
    bool zero = true;
    for (std::size_t j = 0; j < d; ++j) {
      p[j] = static_cast<double>(z[j]) * step[j];
      zero = zero && z[j] == 0;
    }
    if (!zero && evaluate_norm(norm, p) <= 2.0) out.push_back(std::move(p));
    for (std::size_t j = 0; j < d; ++j) {
      if (++z[j] <= hi[j]) break;
      z[j] = lo[j];
    }
  }
  return out;
}

inline bool fits(const NormSpec& norm, const std::vector<Vector>& chosen, VectorView p) {
  return std::all_of(chosen.begin(), chosen.end(),
                     [&](const Vector& q) { return distance(norm, p, q) >= 1.0; });
}

/// One greedy pass. Even restarts try the axis lattice first (shuffled), odd
/// restarts use random samples only. The stream for restart r depends only on
/// (seed, r), so growing either budget never loses a configuration.
inline std::vector<Vector> greedy_restart(const NormSpec& norm, const PackingBudget& budget,
                                          std::size_t restart,
                                          const std::vector<Vector>& lattice) {
  std::seed_seq seq{static_cast<std::uint32_t>(budget.seed),
                    static_cast<std::uint32_t>(budget.seed >> 32),
                    static_cast<std::uint32_t>(restart), 0x5167u};
  std::mt19937_64 rng(seq);
  const std::size_t d = norm.dim;
  std::vector<Vector> chosen{Vector(d, 0.0)};

  if (restart % 2 == 0) {
    std::vector<Vector> order = lattice;
    std::shuffle(order.begin(), order.end(), rng);
    for (auto& p : order) {
      if (fits(norm, chosen, p)) chosen.push_back(std::move(p));
    }
  }

  const Vector box = ball_bounding_box(norm, 2.0);
  std::vector<std::uniform_real_distribution<double>> coord;
  for (double h : box) coord.emplace_back(-h, h);
  const std::size_t max_draws = budget.candidates * 1000 + 1000;
  Vector p(d);
  std::size_t accepted = 0;
  for (std::size_t draw = 0; draw < max_draws && accepted < budget.candidates; ++draw) {
    for (std::size_t j = 0; j < d; ++j) p[j] = coord[j](rng);
    if (evaluate_norm(norm, p) > 2.0) continue;
    ++accepted;
    if (fits(norm, chosen, p)) chosen.push_back(p);
  }
  return chosen;
}

}  // namespace detail

/// Best greedy packing witness over `budget.restarts` independent restarts;
/// ties go to the lower restart index. Deterministic for a fixed budget,
/// whatever the thread count.
inline PackingConfig greedy_pack(const NormSpec& norm, const PackingBudget& budget) {
  const auto report = validate_norm_spec(norm);
  if (!report.ok()) throw Error("invalid norm: " + report.violations.front());
  if (budget.restarts == 0 || budget.candidates == 0) throw Error("packing budget must be positive");

  const auto lattice = detail::axis_lattice_candidates(norm);
  std::vector<std::vector<Vector>> results(budget.restarts);
  detail::parallel_rows(budget.restarts, budget.threads, [&](std::size_t r) {
    results[r] = detail::greedy_restart(norm, budget, r, lattice);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].size() > results[best].size()) best = r;
  }
  return PackingConfig{norm, std::move(results[best])};
}

struct ThetaBounds {
  std::size_t lower = 0;
  std::uint64_t upper = 0;  // 5^d
  PackingConfig witness;
};

inline ThetaBounds theta_bounds(const NormSpec& norm, const PackingBudget& budget) {
  ThetaBounds out;
  out.witness = greedy_pack(norm, budget);
  out.lower = out.witness.size();
  out.upper = pow5(norm.dim);
  return out;
}

/// Origin, unit hexagon, and a radius-2 twelve-gon: 19 points, valid in the
/// Euclidean plane.
inline PackingConfig euclidean_hex_ring_witness() {
  const double pi = std::acos(-1.0);
  PackingConfig cfg{NormSpec::l2(2), {{0.0, 0.0}}};
  for (int i = 0; i < 6; ++i) {
    const double a = pi * i / 3.0;
    cfg.points.push_back({std::cos(a), std::sin(a)});
  }
  for (int i = 0; i < 12; ++i) {
    const double a = pi * i / 6.0;
    cfg.points.push_back({2.0 * std::cos(a), 2.0 * std::sin(a)});
  }
  return cfg;
}

}  // namespace siglab
