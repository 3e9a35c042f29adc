#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "siglab/lemmas.hpp"
#include "siglab/norm.hpp"
#include "siglab/sig.hpp"

namespace siglab {

/// A random test instance. Points are always pairwise distinct: with
/// coincident points the degree bound does not hold (m copies of one point
/// form K_m).
struct Instance {
  std::string norm_name;
  NormSpec norm;
  PointSet points;
  std::size_t k = 1;
  bool lattice = false;  // integer coordinates, many exact distance ties
};

template <typename Rng>
NormSpec random_polytope_norm(Rng& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> count(d + 1, d + 4);
  while (true) {
    std::vector<Vector> rows(count(rng), Vector(d));
    for (auto& r : rows)
      for (auto& t : r) t = u(rng);
    auto spec = NormSpec::polytope(std::move(rows));
    if (validate_norm_spec(spec).ok()) return spec;
  }
}

/// Grid for generated coordinates. Coordinate differences, integer shifts and
/// power-of-two scalings of grid points are exact in double precision, so
/// such transformations leave every computed distance bit-identical.
inline constexpr int kGridBits = 30;

inline double snap_to_grid(double v) {
  return std::ldexp(std::round(std::ldexp(v, kGridBits)), -kGridBits);
}

/// Instance `index` of the seeded family: d in {1..4}, k in [1, 5],
/// n in [k + 1, 200], norm among l1, l2, linf, l3 and (in d = 2) a random
/// polytope norm. Every fourth instance draws distinct integer lattice points;
/// the rest are uniform or Gaussian, snapped to the 2^-30 grid.
inline Instance make_instance(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x51cu};
  std::mt19937_64 rng(seq);
  Instance inst;
  const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  inst.k = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(inst.k + 1, 200)(rng);

  const std::size_t norm_choices = d == 2 ? 5 : 4;
  switch (std::uniform_int_distribution<std::size_t>(0, norm_choices - 1)(rng)) {
    case 0: inst.norm_name = "l1"; inst.norm = NormSpec::l1(d); break;
    case 1: inst.norm_name = "l2"; inst.norm = NormSpec::l2(d); break;
    case 2: inst.norm_name = "linf"; inst.norm = NormSpec::linf(d); break;
    case 3: inst.norm_name = "l3"; inst.norm = NormSpec::lp(3.0, d); break;
    default: inst.norm_name = "polytope"; inst.norm = random_polytope_norm(rng, d); break;
  }

  inst.points.dim = d;
  inst.lattice = index % 4 == 3;
  if (inst.lattice) {
    const auto side = static_cast<long>(std::ceil(std::pow(static_cast<double>(n), 1.0 / d))) + 1;
    std::uniform_int_distribution<long> coord(0, side - 1);
    std::set<Vector> seen;
    while (inst.points.points.size() < n) {
      Vector p(d);
      for (auto& t : p) t = static_cast<double>(coord(rng));
      if (seen.insert(p).second) inst.points.points.push_back(std::move(p));
    }
  } else {
    const bool gaussian = std::bernoulli_distribution(0.5)(rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> g(0.0, 1.0);
    std::set<Vector> seen;
    while (inst.points.points.size() < n) {
      Vector p(d);
      for (auto& t : p) t = snap_to_grid(gaussian ? g(rng) : u(rng));
      if (seen.insert(p).second) inst.points.points.push_back(std::move(p));
    }
  }
  return inst;
}

/// Radius of c_i by sorting every distance from c_i; independent of kth_radii.
inline double brute_force_radius(const PointSet& ps, std::size_t i, std::size_t k,
                                 const NormSpec& norm) {
  std::vector<double> all;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    if (j != i) all.push_back(evaluate_norm(norm, [&] {
      Vector diff(ps.dim);
      for (std::size_t t = 0; t < ps.dim; ++t) diff[t] = ps[i][t] - ps[j][t];
      return diff;
    }()));
  }
  std::sort(all.begin(), all.end());
  return all.at(k - 1);
}

struct CheckResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first_failure;

  bool ok() const { return violations == 0; }

  void record(bool passed, const std::string& context) {
    ++checked;
    if (!passed && violations++ == 0) first_failure = context;
  }
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t instances = 500;
  bool lemmas = false;
  std::size_t bow_pairs = 100'000;
  std::size_t satellite_configs = 10'000;
  bool inject_fault = false;  // k-SIG edge test uses < instead of ≤
  unsigned threads = 1;
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok(); });
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
      arr.push_back({{"name", c.name},
                     {"checked", c.checked},
                     {"violations", c.violations},
                     {"first_failure", c.first_failure}});
    }
    return {{"passed", ok()}, {"checks", std::move(arr)}};
  }
};

namespace detail {

inline std::string describe(const Instance& inst, std::size_t index) {
  return "instance " + std::to_string(index) + " (" + inst.norm_name + ", d=" +
         std::to_string(inst.points.dim) + ", n=" + std::to_string(inst.points.size()) +
         ", k=" + std::to_string(inst.k) + (inst.lattice ? ", lattice" : "") + ")";
}

inline PointSet transformed(const PointSet& ps, const Vector& shift, double scale) {
  PointSet out = ps;
  for (auto& p : out.points)
    for (std::size_t t = 0; t < p.size(); ++t) p[t] = scale * p[t] + shift[t];
  return out;
}

}  // namespace detail

/// Structural checks on the seeded k-SIG instance family.
inline SuiteReport run_theorem_suite(const SuiteConfig& cfg) {
  CheckResult theorem{"theorem"}, corollary{"corollary"}, coloring{"coloring"},
      radius_oracle{"radius_oracle"}, edge_rule{"edge_rule"}, aux_subgraph{"aux_subgraph"},
      monotone{"monotonicity"}, counting{"counting"}, invariance{"invariance"},
      determinism{"determinism"};
  const KsigOptions opts{0.0, cfg.inject_fault};

  for (std::size_t idx = 0; idx < cfg.instances; ++idx) {
    const auto inst = make_instance(cfg.seed, idx);
    const auto& ps = inst.points;
    const auto& norm = inst.norm;
    const auto k = inst.k;
    const auto ctx = detail::describe(inst, idx);

    const auto run = ksig_pipeline(ps, k, norm, opts, ExecPolicy{cfg.threads});
    const auto& radii = run.radii;
    const auto& g = run.graph;

    bool radii_ok = true;
    for (std::size_t i = 0; i < ps.size() && radii_ok; ++i) {
      radii_ok = radii.radii[i] == brute_force_radius(ps, i, k, norm);
    }
    radius_oracle.record(radii_ok, ctx);

    bool rule_ok = true;
    for (std::size_t i = 0; i < ps.size() && rule_ok; ++i) {
      for (std::size_t j = i + 1; j < ps.size() && rule_ok; ++j) {
        const bool expect = distance(norm, ps[i], ps[j]) <= radii.radii[i] + radii.radii[j];
        rule_ok = expect == g.has_edge(i, j);
      }
    }
    edge_rule.record(rule_ok, ctx);

    theorem.record(run.report.passed, ctx);
    corollary.record(run.report.edge_bound_ok, ctx);

    const auto aux = build_aux_graph(ps, radii, norm);
    aux_subgraph.record(aux.is_subgraph_of(g), ctx);
    const auto order = sort_by_radius(radii);
    const auto colors = greedy_color(aux, order);
    coloring.record(is_proper_coloring(aux, colors) && colors.num_colors <= static_cast<int>(k),
                    ctx);

    if (ps.size() > k + 1) {
      const auto next = build_ksig(ps, kth_radii(ps, k + 1, norm), norm, opts);
      monotone.record(g.is_subgraph_of(next), ctx);
    }

    for (auto c : {order[0], order[1]}) {
      if (!(radii.radii[c] > 0.0)) continue;
      try {
        const auto rep = counting_check(ps, radii, g, colors, c, norm);
        counting.record(rep.passed, ctx + " center " + std::to_string(c));
      } catch (const Error& e) {
        counting.record(false, ctx + ": " + e.what());
      }
    }

    if (idx % 5 == 0) {
      std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ull * (idx + 1)));
      Vector shift(ps.dim);
      for (auto& t : shift) t = static_cast<double>(std::uniform_int_distribution<int>(-50, 50)(rng));
      const double scale = std::ldexp(1.0, std::uniform_int_distribution<int>(-3, 3)(rng));
      const auto moved = ksig_pipeline(detail::transformed(ps, shift, 1.0), k, norm, opts);
      const auto scaled = ksig_pipeline(detail::transformed(ps, Vector(ps.dim, 0.0), scale), k,
                                        norm, opts);
      invariance.record(moved.graph == g && scaled.graph == g, ctx);

      const auto parallel = ksig_pipeline(ps, k, norm, opts, ExecPolicy{4});
      const auto serial = ksig_pipeline(ps, k, norm, opts, ExecPolicy{1});
      determinism.record(parallel.radii.radii == serial.radii.radii &&
                             parallel.graph == serial.graph,
                         ctx);
    }
  }
  return SuiteReport{{theorem, corollary, coloring, radius_oracle, edge_rule, aux_subgraph,
                      monotone, counting, invariance, determinism}};
}

/// Norms exercised by the lemma suites, keyed by a display name.
inline std::vector<std::pair<std::string, NormSpec>> lemma_norms(std::size_t d,
                                                                 std::uint64_t seed) {
  std::vector<std::pair<std::string, NormSpec>> out{
      {"l1", NormSpec::l1(d)},
      {"l2", NormSpec::l2(d)},
      {"linf", NormSpec::linf(d)},
      {"l3", NormSpec::lp(3.0, d)},
  };
  std::vector<double> w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = 0.5 + static_cast<double>(i);
  out.emplace_back("wl2", NormSpec::weighted(2.0, w));
  std::mt19937_64 rng(seed + d);
  out.emplace_back("polytope", random_polytope_norm(rng, d));
  return out;
}

/// Random nonzero vector with coordinates in [−1, 1] scaled by 2^u, u in [−3, 3].
template <typename Rng>
Vector random_nonzero(Rng& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> e(-3.0, 3.0);
  Vector v(d);
  do {
    const double s = std::exp2(e(rng));
    for (auto& t : v) t = s * u(rng);
  } while (std::all_of(v.begin(), v.end(), [](double t) { return t == 0.0; }));
  return v;
}

inline CheckResult run_bow_and_arrow_suite(const SuiteConfig& cfg, double floor = -1e-12) {
  CheckResult out{"bow_and_arrow"};
  for (std::size_t d : {2u, 3u}) {
    for (const auto& [name, norm] : lemma_norms(d, cfg.seed)) {
      std::mt19937_64 rng(cfg.seed * 31 + d * 7 + std::hash<std::string>{}(name) % 1000);
      for (std::size_t i = 0; i < cfg.bow_pairs; ++i) {
        const auto a = random_nonzero(rng, d);
        const auto b = random_nonzero(rng, d);
        const double gap = bow_and_arrow_gap(norm, a, b);
        out.record(gap >= floor, name + " d=" + std::to_string(d) + " gap " + std::to_string(gap));
      }
    }
  }
  return out;
}

inline CheckResult run_satellite_suite(const SuiteConfig& cfg) {
  CheckResult out{"satellite"};
  for (std::size_t d : {1u, 2u, 3u}) {
    auto norms = lemma_norms(d, cfg.seed);
    for (const auto& [name, norm] : norms) {
      std::mt19937_64 rng(cfg.seed * 131 + d);
      for (std::size_t i = 0; i < cfg.satellite_configs; ++i) {
        const auto sat = sample_satellite_config(rng, norm);
        const double sep = satellite_separation(sat, norm);
        out.record(sep >= 1.0 - kSeparationSlack,
                   name + " d=" + std::to_string(d) + " separation " + std::to_string(sep));
      }
    }
  }
  return out;
}

/// π is idempotent and lands in B(o, 2).
inline CheckResult run_projection_suite(const SuiteConfig& cfg, std::size_t samples = 10'000) {
  CheckResult out{"projection"};
  for (std::size_t d : {1u, 2u, 3u}) {
    for (const auto& [name, norm] : lemma_norms(d, cfg.seed)) {
      std::mt19937_64 rng(cfg.seed * 17 + d);
      for (std::size_t i = 0; i < samples; ++i) {
        const auto x = random_nonzero(rng, d);
        const auto once = project_ball2(norm, x);
        const auto twice = project_ball2(norm, once);
        double drift = 0.0;
        for (std::size_t t = 0; t < d; ++t) drift = std::max(drift, std::abs(once[t] - twice[t]));
        const bool ok = evaluate_norm(norm, once) <= 2.0 + 1e-12 && drift <= 1e-12;
        out.record(ok, name + " d=" + std::to_string(d));
      }
    }
  }
  return out;
}

inline SuiteReport run_verify_suite(const SuiteConfig& cfg) {
  auto report = run_theorem_suite(cfg);
  if (cfg.lemmas) {
    report.checks.push_back(run_bow_and_arrow_suite(cfg));
    report.checks.push_back(run_satellite_suite(cfg));
    report.checks.push_back(run_projection_suite(cfg));
  }
  return report;
}

}  // namespace siglab
