#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace siglab {

/// Thrown for every contract violation reported by the library (bad input,
/// dimension mismatch, unsatisfiable parameters).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vector = std::vector<double>;
using VectorView = std::span<const double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative tolerance used when checking norm specs for degeneracy.
inline constexpr double kValidationRelTol = 1e-9;

struct LpNorm {
  double p = 2.0;  // kInfinity selects the max norm
};

/// ‖x‖ = ‖(w_1 x_1, ..., w_d x_d)‖_p
struct WeightedLpNorm {
  double p = 2.0;
  std::vector<double> weights;
};

/// ‖x‖ = max_i |⟨a_i, x⟩| over the facet functionals a_i.
struct PolytopeNorm {
  std::vector<Vector> functionals;
};

/// A norm on R^dim.
struct NormSpec {
  std::variant<LpNorm, WeightedLpNorm, PolytopeNorm> kind;
  std::size_t dim = 0;

  static NormSpec lp(double p, std::size_t dim) { return {LpNorm{p}, dim}; }
  static NormSpec l1(std::size_t dim) { return lp(1.0, dim); }
  static NormSpec l2(std::size_t dim) { return lp(2.0, dim); }
  static NormSpec linf(std::size_t dim) { return lp(kInfinity, dim); }
  static NormSpec weighted(double p, std::vector<double> weights) {
    const auto d = weights.size();
    return {WeightedLpNorm{p, std::move(weights)}, d};
  }
  static NormSpec polytope(std::vector<Vector> functionals) {
    const auto d = functionals.empty() ? 0 : functionals.front().size();
    return {PolytopeNorm{std::move(functionals)}, d};
  }
};

struct NormValidation {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline void check_dim(const NormSpec& spec, std::size_t n) {
  if (n != spec.dim) {
    throw Error("dimension mismatch: norm has dim " + std::to_string(spec.dim) +
                ", vector has " + std::to_string(n));
  }
}

/// ℓp norm of the sequence (scale * x_i); scaled by the largest magnitude so
/// that large exponents neither overflow nor underflow.
template <typename Scale>
double lp_value(VectorView x, double p, Scale&& scale) {
  double peak = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    peak = std::max(peak, std::abs(scale(i) * x[i]));
  }
  if (peak == 0.0 || std::isinf(p)) return peak;
  if (p == 1.0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += std::abs(scale(i) * x[i]);
    return sum;
  }
  double sum = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double t = scale(i) * x[i] / peak;
      sum += t * t;
    }
    return peak * std::sqrt(sum);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += std::pow(std::abs(scale(i) * x[i]) / peak, p);
  }
  return peak * std::pow(sum, 1.0 / p);
}

inline Eigen::MatrixXd functional_matrix(const PolytopeNorm& poly, std::size_t dim) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(poly.functionals.size()),
                    static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < poly.functionals.size(); ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = poly.functionals[i][j];
    }
  }
  return a;
}

}  // namespace detail

inline NormValidation validate_norm_spec(const NormSpec& spec) {
  NormValidation report;
  auto& v = report.violations;
  if (spec.dim == 0) v.emplace_back("dimension must be positive");

  auto check_exponent = [&](double p) {
    if (std::isnan(p)) {
      v.emplace_back("exponent is not a number");
    } else if (p < 1.0) {
      v.emplace_back("exponent < 1");
    }
  };

  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, LpNorm>) {
          check_exponent(n.p);
        } else if constexpr (std::is_same_v<T, WeightedLpNorm>) {
          check_exponent(n.p);
          if (n.weights.size() != spec.dim) v.emplace_back("weight count does not match dimension");
          for (double w : n.weights) {
            if (!(w > 0.0) || !std::isfinite(w)) {
              v.emplace_back("nonpositive weight");
              break;
            }
          }
        } else {
          if (n.functionals.size() < spec.dim) v.emplace_back("fewer functionals than dimension");
          bool shaped = true;
          for (const auto& a : n.functionals) {
            if (a.size() != spec.dim) {
              v.emplace_back("functional length does not match dimension");
              shaped = false;
              break;
            }
            if (!std::all_of(a.begin(), a.end(), [](double t) { return std::isfinite(t); })) {
              v.emplace_back("non-finite functional entry");
              shaped = false;
              break;
            }
          }
          if (shaped && spec.dim > 0 && !n.functionals.empty()) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(detail::functional_matrix(n, spec.dim));
            const auto& s = svd.singularValues();
            const double largest = s.size() > 0 ? s(0) : 0.0;
            Eigen::Index rank = 0;
            for (Eigen::Index i = 0; i < s.size(); ++i) {
              if (s(i) > kValidationRelTol * largest) ++rank;
            }
            if (largest == 0.0 || rank < static_cast<Eigen::Index>(spec.dim)) {
              v.emplace_back("functionals do not span");
            }
          } else if (shaped && n.functionals.empty() && spec.dim > 0) {
            v.emplace_back("functionals do not span");
          }
        }
      },
      spec.kind);
  return report;
}

inline double evaluate_norm(const NormSpec& spec, VectorView x) {
  detail::check_dim(spec, x.size());
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, LpNorm>) {
          return detail::lp_value(x, n.p, [](std::size_t) { return 1.0; });
        } else if constexpr (std::is_same_v<T, WeightedLpNorm>) {
          return detail::lp_value(x, n.p, [&](std::size_t i) { return n.weights[i]; });
        } else {
          double best = 0.0;
          for (const auto& a : n.functionals) {
            double dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += a[i] * x[i];
            best = std::max(best, std::abs(dot));
          }
          return best;
        }
      },
      spec.kind);
}

/// ‖x − y‖. The difference is formed coordinate-wise, so distance(x, y) and
/// distance(y, x) agree exactly.
inline double distance(const NormSpec& spec, VectorView x, VectorView y) {
  if (x.size() != y.size()) throw Error("dimension mismatch between points");
  detail::check_dim(spec, x.size());
  Vector diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  return evaluate_norm(spec, diff);
}

inline Vector unit_vector(const NormSpec& spec, VectorView x) {
  const double len = evaluate_norm(spec, x);
  if (len == 0.0) throw Error("unit vector of the zero vector is undefined");
  Vector out(x.begin(), x.end());
  for (double& t : out) t /= len;
  return out;
}

/// Half-widths h_j such that the ball B(o, radius) lies inside the box
/// ∏[−h_j, h_j]. Exact for the ℓp families; for polytopes a bound from the
/// smallest singular value of the functional matrix.
inline Vector ball_bounding_box(const NormSpec& spec, double radius) {
  return std::visit(
      [&](const auto& n) -> Vector {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, LpNorm>) {
          return Vector(spec.dim, radius);
        } else if constexpr (std::is_same_v<T, WeightedLpNorm>) {
          Vector h(spec.dim);
          for (std::size_t j = 0; j < spec.dim; ++j) h[j] = radius / n.weights[j];
          return h;
        } else {
          Eigen::JacobiSVD<Eigen::MatrixXd> svd(detail::functional_matrix(n, spec.dim));
          const auto& s = svd.singularValues();
          const double smallest = s(s.size() - 1);
          if (!(smallest > 0.0)) throw Error("polytope norm is degenerate");
          const double f = static_cast<double>(n.functionals.size());
          return Vector(spec.dim, radius * std::sqrt(f) / smallest);
        }
      },
      spec.kind);
}

}  // namespace siglab
