// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include "oracles.hpp"
#include "siglab/io.hpp"
#include "siglab/lemmas.hpp"
#include "siglab/packing.hpp"
#include "siglab/sig.hpp"
#include "siglab/suite.hpp"

using namespace siglab;

namespace {

constexpr std::uint64_t kSeed = 20261016;
constexpr std::size_t kInstances = 500;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && passed) {
      passed = false;
      detail = why;
    }
  }
};

int failures = 0;

void criterion(const std::string& id, const std::string& title,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.passed) ++failures;
  std::printf("[%s] %s %s (%.2fs)%s%s\n", out.passed ? "PASS" : "FAIL", id.c_str(), title.c_str(),
              secs, out.detail.empty() ? "" : " : ", out.detail.c_str());
  std::fflush(stdout);
}

/// Distance oracle for an instance: the plain ℓp formula, or the library
/// norm for polytopes.
std::function<double(const Vector&, const Vector&)> oracle_distance(const Instance& inst) {
  const auto* lp = std::get_if<LpNorm>(&inst.norm.kind);
  if (lp) {
    const double p = std::isinf(lp->p) ? 0.0 : lp->p;
    return [p](const Vector& a, const Vector& b) { return oracle::lp_distance(a, b, p); };
  }
  return [norm = inst.norm](const Vector& a, const Vector& b) { return distance(norm, a, b); };
}

struct Built {
  Instance inst;
  PipelineResult run;
};

std::vector<Built> build_all() {
  std::vector<Built> out;
  for (std::size_t i = 0; i < kInstances; ++i) {
    auto inst = make_instance(kSeed, i);
    auto run = ksig_pipeline(inst.points, inst.k, inst.norm);
    out.push_back({std::move(inst), std::move(run)});
  }
  return out;
}

std::string label(std::size_t i, const Instance& inst) {
  return "instance " + std::to_string(i) + " (" + inst.norm_name + ", d=" +
         std::to_string(inst.points.dim) + ", n=" + std::to_string(inst.points.size()) +
         ", k=" + std::to_string(inst.k) + ")";
}

}  // namespace

int main() {
  std::vector<Built> built;

  criterion("AC1", "theorem: two smallest-radius vertices have degree < 5^d k", [&] {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    built = build_all();
    bool saw_polytope = false;
    for (std::size_t i = 0; i < built.size(); ++i) {
      const auto& [inst, run] = built[i];
      saw_polytope = saw_polytope || inst.norm_name == "polytope";
      const auto deg = degree_sequence(run.graph);
      const auto bound = pow5(inst.points.dim) * inst.k;
      std::size_t low = 0;
      for (auto d : deg) low += d < bound;
      const auto order = sort_by_radius(run.radii);
      out.require(low >= 2 && deg[order[0]] < bound && deg[order[1]] < bound && run.report.passed,
                  label(i, inst));
    }
    out.require(saw_polytope, "no polytope instance generated");
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs < 60.0, "runtime " + std::to_string(secs) + "s exceeds 60s");
    return out;
  });

  criterion("AC2", "corollary: |E| <= (5^d k - 1) n", [&] {
    Outcome out;
    for (std::size_t i = 0; i < built.size(); ++i) {
      const auto& [inst, run] = built[i];
      const auto limit = (pow5(inst.points.dim) * inst.k - 1) * inst.points.size();
      out.require(run.graph.num_edges() <= limit && run.report.edge_bound_ok, label(i, inst));
    }
    return out;
  });

  criterion("AC3", "coloring: greedy radius-order coloring of H uses <= k colors", [&] {
    Outcome out;
    for (std::size_t i = 0; i < built.size(); ++i) {
      const auto& [inst, run] = built[i];
      const auto h = build_aux_graph(inst.points, run.radii, inst.norm);
      const auto c = greedy_color(h, sort_by_radius(run.radii));
      out.require(is_proper_coloring(h, c) && c.num_colors <= static_cast<int>(inst.k),
                  label(i, inst));
    }
    return out;
  });

  criterion("AC4", "bow-and-arrow: gap >= -1e-12 on 1e5 pairs per norm", [&] {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    SuiteConfig cfg;
    cfg.seed = kSeed;
    cfg.bow_pairs = 100'000;
    const auto r = run_bow_and_arrow_suite(cfg, -1e-12);
    out.require(r.ok(), r.first_failure);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs < 10.0, "runtime " + std::to_string(secs) + "s exceeds 10s");
    return out;
  });

  criterion("AC5", "satellite: separation >= 1 - 1e-9 on 1e4 configs per norm, d in {1,2,3}", [&] {
    Outcome out;
    SuiteConfig cfg;
    cfg.seed = kSeed;
    cfg.satellite_configs = 10'000;
    const auto r = run_satellite_suite(cfg);
    out.require(r.ok(), r.first_failure);
    return out;
  });

  criterion("AC6", "counting check at both witnesses on 100 instances", [&] {
    Outcome out;
    std::size_t used = 0;
    for (std::size_t i = 0; i < built.size() && used < 100; ++i) {
      const auto& [inst, run] = built[i];
      const auto order = sort_by_radius(run.radii);
      const auto colors =
          greedy_color(build_aux_graph(inst.points, run.radii, inst.norm), order);
      for (auto c : {order[0], order[1]}) {
        const auto rep = counting_check(inst.points, run.radii, run.graph, colors, c, inst.norm);
        out.require(rep.interior_count + 1 <= inst.k && rep.separation_ok && rep.passed,
                    label(i, inst) + " center " + std::to_string(c));
      }
      ++used;
    }
    out.require(used == 100, "only " + std::to_string(used) + " instances");
    return out;
  });

  criterion("AC7", "packing bounds: (5,5) in d=1, (25,25) for linf d=2, >=13 for l2 d=2", [&] {
    Outcome out;
    for (double p : {1.0, 2.0, 3.0, kInfinity}) {
      const auto b = theta_bounds(NormSpec::lp(p, 1), {kSeed, 20, 100'000});
      out.require(b.lower == 5 && b.upper == 5 && validate_packing(b.witness).valid(),
                  "d=1 p=" + std::to_string(p) + " gave " + std::to_string(b.lower));
    }
    const auto grid = theta_bounds(NormSpec::linf(2), {kSeed, 20, 100'000});
    out.require(grid.lower == 25 && grid.upper == 25 && validate_packing(grid.witness).valid(),
                "linf d=2 gave " + std::to_string(grid.lower));

    const auto start = std::chrono::steady_clock::now();
    const auto disc = theta_bounds(NormSpec::l2(2), {kSeed, 20, 100'000});
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(disc.lower >= 13 && disc.upper == 25 && validate_packing(disc.witness).valid(),
                "l2 d=2 gave " + std::to_string(disc.lower));
    out.require(secs < 30.0, "l2 search took " + std::to_string(secs) + "s");
    std::printf("       l2 d=2 lower bound %zu (%.2fs)\n", disc.lower, secs);

    const auto hex = euclidean_hex_ring_witness();
    out.require(hex.size() == 19 && validate_packing(hex).valid(), "19-point witness rejected");
    return out;
  });

  criterion("AC8", "oracle and structure", [&] {
    Outcome out;
    for (std::size_t i = 0; i < 50; ++i) {
      const auto& [inst, run] = built[i];
      const auto expect = oracle::radii(inst.points, inst.k, oracle_distance(inst));
      for (std::size_t v = 0; v < expect.size(); ++v) {
        out.require(std::abs(run.radii.radii[v] - expect[v]) <= 1e-12 * expect[v],
                    "radius oracle " + label(i, inst));
      }
    }

    std::size_t mono = 0;
    for (std::size_t i = 0; i < built.size() && mono < 100; ++i) {
      const auto& [inst, run] = built[i];
      if (inst.points.size() <= inst.k + 1) continue;
      const auto next = ksig_pipeline(inst.points, inst.k + 1, inst.norm);
      out.require(run.graph.is_subgraph_of(next.graph), "monotonicity " + label(i, inst));
      ++mono;
    }
    out.require(mono == 100, "monotonicity ran on " + std::to_string(mono) + " instances");

    // Exact transformations (grid shifts, power-of-two scales) on every norm;
    // arbitrary real ones on strictly convex norms in d >= 2 off the lattice,
    // where exact ties between d_ij and r_i + r_j need collinear points.
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<long> grid_shift(-(16L << kGridBits), 16L << kGridBits);
    std::uniform_int_distribution<int> pow2(-4, 4);
    std::uniform_real_distribution<double> shift(-10.0, 10.0), scale(0.1, 10.0);
    std::size_t arbitrary = 0;
    for (std::size_t i = 0; i < 100; ++i) {
      const auto& [inst, run] = built[i];
      const bool strictly_convex = (inst.norm_name == "l2" || inst.norm_name == "l3") &&
                                   inst.points.dim >= 2 && !inst.lattice;
      for (const bool exact : {true, false}) {
        if (!exact && !strictly_convex) continue;
        arbitrary += !exact;
        PointSet moved = inst.points, scaled = inst.points;
        Vector t(inst.points.dim);
        for (auto& x : t) x = exact ? std::ldexp(static_cast<double>(grid_shift(rng)), -kGridBits)
                                    : shift(rng);
        const double s = exact ? std::ldexp(1.0, pow2(rng)) : scale(rng);
        for (std::size_t p = 0; p < moved.size(); ++p) {
          for (std::size_t j = 0; j < t.size(); ++j) {
            moved.points[p][j] += t[j];
            scaled.points[p][j] *= s;
          }
        }
        const std::string how = exact ? " (exact)" : " (arbitrary)";
        out.require(ksig_pipeline(moved, inst.k, inst.norm).graph == run.graph,
                    "translation" + how + " " + label(i, inst));
        out.require(ksig_pipeline(scaled, inst.k, inst.norm).graph == run.graph,
                    "scaling" + how + " " + label(i, inst));
      }
    }
    out.require(arbitrary > 0, "no strictly convex instance for arbitrary transforms");

    const auto path =
        (std::filesystem::temp_directory_path() / "siglab_acceptance_graph.json").string();
    for (std::size_t i = 0; i < 20; ++i) {
      const auto& [inst, run] = built[i];
      export_graph(run.graph, run.radii, GraphFormat::json, path);
      const auto back = graph_from_json(json::parse(detail::read_file(path)));
      out.require(back.graph == run.graph && back.radii.radii == run.radii.radii &&
                      back.k == inst.k,
                  "round trip " + label(i, inst));
    }
    std::remove(path.c_str());

    for (std::size_t i = 0; i < 50; ++i) {
      const auto& inst = built[i].inst;
      const auto serial = ksig_pipeline(inst.points, inst.k, inst.norm, {}, ExecPolicy{1});
      const auto parallel = ksig_pipeline(inst.points, inst.k, inst.norm, {}, ExecPolicy{4});
      out.require(serial.radii.radii == parallel.radii.radii && serial.graph == parallel.graph,
                  "serial/parallel " + label(i, inst));
      const auto again = make_instance(kSeed, i);
      out.require(again.points.points == inst.points.points, "instance regeneration " + label(i, inst));
    }
    const auto a = greedy_pack(NormSpec::l2(2), {kSeed, 4, 5000, 1});
    const auto b = greedy_pack(NormSpec::l2(2), {kSeed, 4, 5000, 4});
    out.require(a.points == b.points, "packing serial/parallel");
    return out;
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
