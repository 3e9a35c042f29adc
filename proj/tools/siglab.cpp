// siglab: build and verify k-th closed sphere-of-influence graphs.
//
// Exit status: 0 all checks passed, 1 verification violation, 2 usage or
// input error.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "siglab/io.hpp"
#include "siglab/lemmas.hpp"
#include "siglab/packing.hpp"
#include "siglab/sig.hpp"
#include "siglab/suite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SIGLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw siglab::Error(std::string("SIGLAB_SEED is not an integer: ") + env);
    }
  }
  return 1;
}

struct InputOptions {
  std::string path;
  std::string format;  // csv | json, empty = by extension
  std::size_t dim = 0;
  std::string norm = "l2";
  std::size_t k = 1;
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool with_k = true) {
  cmd->add_option("--in", in.path, "Point file (CSV or JSON)")->required();
  cmd->add_option("--format", in.format, "Input format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--dim", in.dim, "Point dimension (inferred when omitted)");
  cmd->add_option("--norm", in.norm, "l1 | l2 | linf | lp:<p> | wlp:<p>:<w,..> | poly:<file>");
  if (with_k) cmd->add_option("--k", in.k, "Neighbor rank k")->check(CLI::PositiveNumber);
}

struct LoadedInput {
  siglab::PointSet points;
  siglab::NormSpec norm;
};

LoadedInput load(const InputOptions& in) {
  const auto format = in.format.empty() ? siglab::format_for_path(in.path)
                      : in.format == "json" ? siglab::PointFormat::json
                                            : siglab::PointFormat::csv;
  auto ps = siglab::parse_points(in.path, format, in.dim);
  auto norm = siglab::parse_norm_spec(in.norm, ps.dim);
  return {std::move(ps), std::move(norm)};
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    siglab::detail::write_file(out_path, text);
  }
}

nlohmann::json report_json(const siglab::VerificationReport& r) {
  return {{"degree_sequence", r.degree_sequence},
          {"witness_vertices", {r.witness_vertices.first, r.witness_vertices.second}},
          {"bound", r.bound},
          {"low_degree_count", r.low_degree_count},
          {"passed", r.passed},
          {"edge_count", r.edge_count},
          {"edge_bound", r.edge_bound},
          {"edge_bound_ok", r.edge_bound_ok}};
}

nlohmann::json counting_json(const siglab::CountingReport& r) {
  nlohmann::json out{{"center", r.center},
                     {"degree", r.degree},
                     {"interior_count", r.interior_count},
                     {"class_outside_sizes", r.class_outside_sizes},
                     {"decomposition_bound", r.decomposition_bound},
                     {"passed", r.passed}};
  out["min_separation"] = std::isinf(r.min_separation) ? nlohmann::json(nullptr)
                                                       : nlohmann::json(r.min_separation);
  return out;
}

int run_verify_input(const InputOptions& in, const std::string& out_path) {
  const auto loaded = load(in);
  const auto& ps = loaded.points;
  const auto run = siglab::ksig_pipeline(ps, in.k, loaded.norm);
  const auto aux = siglab::build_aux_graph(ps, run.radii, loaded.norm);
  const auto order = siglab::sort_by_radius(run.radii);
  const auto colors = siglab::greedy_color(aux, order);
  const bool coloring_ok = colors.num_colors <= static_cast<int>(in.k);

  nlohmann::json doc{{"theorem", report_json(run.report)},
                     {"coloring", {{"num_colors", colors.num_colors}, {"passed", coloring_ok}}}};
  bool ok = run.report.passed && run.report.edge_bound_ok && coloring_ok;
  nlohmann::json counting = nlohmann::json::array();
  for (auto c : {order[0], order[1]}) {
    if (!(run.radii.radii[c] > 0.0)) {
      counting.push_back({{"center", c}, {"skipped", "zero radius"}});
      continue;
    }
    const auto rep = siglab::counting_check(ps, run.radii, run.graph, colors, c, loaded.norm);
    ok = ok && rep.passed;
    counting.push_back(counting_json(rep));
  }
  doc["counting"] = std::move(counting);
  doc["passed"] = ok;
  emit(out_path, doc.dump(2) + "\n");
  return ok ? kExitOk : kExitViolation;
}

int run_suite(const siglab::SuiteConfig& cfg, const std::string& json_path) {
  const auto report = siglab::run_verify_suite(cfg);
  for (const auto& c : report.checks) {
    std::cout << (c.ok() ? "PASS " : "FAIL ") << c.name << "  checked=" << c.checked
              << " violations=" << c.violations;
    if (!c.ok()) std::cout << "  first: " << c.first_failure;
    std::cout << '\n';
  }
  if (!json_path.empty()) siglab::detail::write_file(json_path, report.to_json().dump(2) + "\n");
  return report.ok() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-th closed sphere-of-influence graph toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a seeded point cloud");
  std::size_t gen_n = 100, gen_d = 2;
  std::string gen_dist = "uniform-box", gen_format;
  gen->add_option("--n", gen_n, "Number of points");
  gen->add_option("--dim", gen_d, "Dimension");
  gen->add_option("--dist", gen_dist, "uniform-box | gaussian | clustered");
  gen->add_option("--format", gen_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  gen->add_option("--out", out_path, "Output file (stdout when omitted)");

  // radii / build / color / verify share the point-input options
  InputOptions radii_in, build_in, color_in, verify_in;
  auto* radii = app.add_subcommand("radii", "Compute k-th influence radii");
  add_input_options(radii, radii_in);
  radii->add_option("--out", out_path, "Output JSON file");

  auto* build = app.add_subcommand("build", "Build the k-th closed sphere-of-influence graph");
  add_input_options(build, build_in);
  std::string graph_format = "json";
  double tolerance = 0.0;
  build->add_option("--graph-format", graph_format)->check(CLI::IsMember({"json", "dot"}));
  build->add_option("--tolerance", tolerance,
                    "Extra slack in the closed-ball test (departs from the exact rule)");
  build->add_option("--out", out_path, "Output file");

  auto* color = app.add_subcommand("color", "Greedily color the auxiliary graph in radius order");
  add_input_options(color, color_in);
  color->add_option("--out", out_path, "Output JSON file");

  auto* verify = app.add_subcommand("verify", "Verify the degree bound on a file or a seeded suite");
  verify->add_option("--in", verify_in.path, "Point file; omit to run the randomized suite");
  verify->add_option("--format", verify_in.format)->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--dim", verify_in.dim);
  verify->add_option("--norm", verify_in.norm);
  verify->add_option("--k", verify_in.k)->check(CLI::PositiveNumber);
  siglab::SuiteConfig suite;
  std::string report_path;
  verify->add_option("--instances", suite.instances, "Random instances in the suite");
  verify->add_flag("--lemmas", suite.lemmas, "Also run bow-and-arrow, satellite and projection suites");
  verify->add_option("--threads", suite.threads);
  verify->add_option("--json", report_path, "Write the suite report as JSON");
  verify->add_flag("--inject-fault", suite.inject_fault,
                   "Self-test: use a strict edge test so the suite must fail")
      ->group("");
  verify->add_option("--out", out_path, "Report file for --in mode");

  auto* theta = app.add_subcommand("theta", "Bound the packing number of a norm");
  std::string theta_norm = "l2";
  std::size_t theta_dim = 2;
  siglab::PackingBudget budget;
  theta->add_option("--norm", theta_norm);
  theta->add_option("--dim", theta_dim)->required();
  theta->add_option("--restarts", budget.restarts)->check(CLI::PositiveNumber);
  theta->add_option("--candidates", budget.candidates)->check(CLI::PositiveNumber);
  theta->add_option("--threads", budget.threads);
  theta->add_option("--out", out_path, "Witness JSON file");

  auto* exportc = app.add_subcommand("export", "Re-serialize a graph JSON file as JSON or DOT");
  std::string graph_in;
  exportc->add_option("--graph", graph_in, "Graph JSON produced by build")->required();
  exportc->add_option("--graph-format", graph_format)->check(CLI::IsMember({"json", "dot"}));
  exportc->add_option("--out", out_path, "Output file");

  for (auto* cmd : {gen, verify, theta}) {
    cmd->add_option("--seed", seed, "Random seed (default: SIGLAB_SEED or 1)")
        ->each([&](const std::string&) { seed_given = true; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!seed_given) seed = default_seed();

    if (*gen) {
      const auto ps = siglab::generate_points(gen_n, gen_d, siglab::parse_distribution(gen_dist), seed);
      const bool as_json = gen_format.empty()
                               ? !out_path.empty() && siglab::format_for_path(out_path) ==
                                                          siglab::PointFormat::json
                               : gen_format == "json";
      emit(out_path, as_json ? siglab::points_to_json(ps).dump() + "\n" : siglab::points_to_csv(ps));
      return kExitOk;
    }
    if (*radii) {
      const auto in = load(radii_in);
      const auto r = siglab::kth_radii(in.points, radii_in.k, in.norm);
      emit(out_path, nlohmann::json{{"k", r.k}, {"radii", r.radii}}.dump() + "\n");
      return kExitOk;
    }
    if (*build) {
      const auto in = load(build_in);
      const auto r = siglab::kth_radii(in.points, build_in.k, in.norm);
      const auto g = siglab::build_ksig(in.points, r, in.norm, siglab::KsigOptions{tolerance});
      emit(out_path, graph_format == "dot" ? siglab::graph_to_dot(g, r)
                                           : siglab::graph_to_json(g, r).dump() + "\n");
      return kExitOk;
    }
    if (*color) {
      const auto in = load(color_in);
      const auto r = siglab::kth_radii(in.points, color_in.k, in.norm);
      const auto aux = siglab::build_aux_graph(in.points, r, in.norm);
      const auto c = siglab::greedy_color(aux, siglab::sort_by_radius(r));
      nlohmann::json doc = siglab::graph_to_json(aux, r);
      doc["colors"] = c.colors;
      doc["num_colors"] = c.num_colors;
      emit(out_path, doc.dump() + "\n");
      return c.num_colors <= static_cast<int>(color_in.k) ? kExitOk : kExitViolation;
    }
    if (*verify) {
      if (!verify_in.path.empty()) return run_verify_input(verify_in, out_path);
      suite.seed = seed;
      return run_suite(suite, report_path);
    }
    if (*theta) {
      budget.seed = seed;
      const auto norm = siglab::parse_norm_spec(theta_norm, theta_dim);
      const auto bounds = siglab::theta_bounds(norm, budget);
      std::cout << "lower " << bounds.lower << "\nupper " << bounds.upper << '\n';
      if (!out_path.empty()) {
        siglab::detail::write_file(out_path, siglab::packing_to_json(bounds.witness).dump() + "\n");
      }
      return siglab::validate_packing(bounds.witness).valid() ? kExitOk : kExitViolation;
    }
    if (*exportc) {
      const auto doc = siglab::graph_from_json(nlohmann::json::parse(siglab::detail::read_file(graph_in)));
      emit(out_path, graph_format == "dot" ? siglab::graph_to_dot(doc.graph, doc.radii)
                                           : siglab::graph_to_json(doc.graph, doc.radii).dump() + "\n");
      return kExitOk;
    }
  } catch (const siglab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
