#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "alcove/io.hpp"

namespace alcove {

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNoCertificate = 3;

struct ProblemSpec {
  SurfaceGroupData data;
  std::uint64_t seed = 0;
  int samples = 10000;
  double classify_tol = kClassifyTol;
  double residual_tol = SolveOptions{}.residual_tol;
};

ProblemSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file: " + path);
  json j = json::parse(in);
  ProblemSpec spec{surface_data_from_json(j)};
  spec.seed = j.value("seed", 0ULL);
  spec.samples = j.value("samples", 10000);
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    spec.classify_tol = t.value("classify", kClassifyTol);
    spec.residual_tol = t.value("residual", spec.residual_tol);
  }
  return spec;
}

Eigen::VectorXd parse_reals(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  Eigen::VectorXd v(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) v[static_cast<int>(k)] = values[k];
  return v;
}

void emit(const json& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload.dump() << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot open output file: " + out_path);
  out << payload.dump(2) << "\n";
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path);
  return json::parse(in);
}

std::vector<Matrix> load_matrix_list(const json& j) {
  std::vector<Matrix> out;
  for (const auto& m : j.at("matrices")) out.push_back(matrix_from_json(m));
  if (out.empty()) throw Error("matrix list is empty");
  return out;
}

void write_cloud(const AlcoveCloud& cloud, const std::string& out_path,
                 double classify_tol) {
  if (out_path.empty()) {
    write_cloud_csv(std::cout, cloud, classify_tol);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot open output file: " + out_path);
  write_cloud_csv(out, cloud, classify_tol);
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Weyl alcove and momentum polytope toolkit for SU(n)"};
  app.require_subcommand(1);

  std::string spec_path, out_path, in_path, x_text, target_text, direction;
  double tol = kClassifyTol;
  double eps = 1e-6;
  bool symmetric = false, with_witness = false;
  int jobs = 1, pairs = 200, grid = 21, real_samples = 0;
  std::optional<std::uint64_t> seed_flag;
  std::optional<int> samples_flag;
  SolveOptions solve_opts;

  auto add_spec = [&](CLI::App* cmd) {
    cmd->add_option("--spec", spec_path, "problem spec JSON")->required();
    cmd->add_option("--seed", seed_flag, "override the spec seed");
    cmd->add_option("--jobs", jobs, "worker threads (output is order-stable)");
  };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--restarts", solve_opts.restarts, "solver restarts");
    cmd->add_option("--max-iters", solve_opts.max_iters, "iterations per restart");
    cmd->add_option("--residual-tol", solve_opts.residual_tol, "convergence residual");
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "cell signature of an alcove point");
  classify_cmd->add_option("--x", x_text, "comma-separated alcove coordinates")->required();
  classify_cmd->add_option("--tol", tol, "wall tolerance");
  classify_cmd->add_option("--out", out_path, "output path (stdout default)");

  CLI::App* sample_cmd = app.add_subcommand("sample", "sample the full momentum polytope");
  add_spec(sample_cmd);
  sample_cmd->add_option("--samples", samples_flag, "sample count");
  sample_cmd->add_option("--out", out_path, "CSV output path");
  sample_cmd->add_option("--tol", tol, "cell classification tolerance");

  CLI::App* real_cmd = app.add_subcommand("real-sample", "sample the real momentum polytope");
  add_spec(real_cmd);
  add_solver(real_cmd);
  real_cmd->add_option("--samples", samples_flag, "target count");
  real_cmd->add_option("--out", out_path, "CSV output path");
  real_cmd->add_option("--tol", tol, "cell classification tolerance");

  CLI::App* convex_cmd = app.add_subcommand("verify-convexity", "midpoint feasibility check");
  add_spec(convex_cmd);
  add_solver(convex_cmd);
  convex_cmd->add_option("--samples", samples_flag, "cloud size");
  convex_cmd->add_option("--pairs", pairs, "midpoint pairs");
  convex_cmd->add_option("--out", out_path, "JSON report path");

  CLI::App* real_eq_cmd = app.add_subcommand("verify-real", "compare real and full polytopes");
  add_spec(real_eq_cmd);
  add_solver(real_eq_cmd);
  real_eq_cmd->add_option("--samples", samples_flag, "full cloud size");
  real_eq_cmd->add_option("--real-samples", real_samples, "real cloud targets (default samples/100)");
  real_eq_cmd->add_option("--grid", grid, "solver grid targets");
  real_eq_cmd->add_option("--out", out_path, "JSON report path");

  CLI::App* transfer_cmd = app.add_subcommand("transfer", "symmetric <-> unitary transfer");
  transfer_cmd->add_option("--direction", direction, "to-unitary or to-symmetric")
      ->required()
      ->check(CLI::IsMember({"to-unitary", "to-symmetric"}));
  transfer_cmd->add_option("--in", in_path, "input JSON with {\"matrices\": [...]}")->required();
  transfer_cmd->add_option("--out", out_path, "output path");
  transfer_cmd->add_option("--tol", tol, "chain tolerance");

  CLI::App* decompose_cmd = app.add_subcommand("decompose", "decomposition chain of a configuration");
  decompose_cmd->add_option("--in", in_path, "configuration JSON")->required();
  decompose_cmd->add_option("--out", out_path, "output path");
  decompose_cmd->add_option("--tol", tol, "witness tolerance");

  CLI::App* solve_cmd = app.add_subcommand("solve", "search a momentum fiber");
  add_spec(solve_cmd);
  add_solver(solve_cmd);
  solve_cmd->add_option("--target", target_text, "alcove coordinates of the target")->required();
  solve_cmd->add_flag("--symmetric", symmetric, "search the beta-fixed locus");
  solve_cmd->add_flag("--witness", with_witness, "embed the witness matrices in the report");
  solve_cmd->add_option("--out", out_path, "JSON report path");

  CLI::App* grad_cmd = app.add_subcommand("gradcheck", "finite-difference gradient validation");
  add_spec(grad_cmd);
  grad_cmd->add_option("--eps", eps, "finite-difference step");
  grad_cmd->add_flag("--symmetric", symmetric, "include the beta-fixity penalty");
  grad_cmd->add_option("--out", out_path, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", e.what()}}.dump() << "\n";
    return kExitValidation;
  }

  try {
    if (*classify_cmd) {
      const AlcovePoint x(parse_reals(x_text), std::max(tol, kPointTol));
      json out = to_json(classify(x, tol));
      out["tol"] = tol;
      emit(out, out_path);
      return 0;
    }
    if (*transfer_cmd) {
      const json input = load_json(in_path);
      const std::vector<Matrix> matrices = load_matrix_list(input);
      const int n = static_cast<int>(matrices.front().rows());
      json out{{"direction", direction}, {"tol", tol}};
      if (direction == "to-unitary") {
        const std::vector<Matrix> u = transfer_from_symmetric(matrices);
        Matrix total = Matrix::Identity(n, n);
        for (const auto& m : matrices) total *= m;
        Matrix product = Matrix::Identity(n, n);
        for (const auto& m : u) product *= m;
        json list = json::array();
        for (const auto& m : u) list.push_back(to_json(m));
        out["matrices"] = list;
        out["identity_residual"] = (product - total.transpose() * total).norm();
      } else {
        const std::vector<Matrix> a = transfer_to_symmetric(matrices, tol);
        Matrix product = Matrix::Identity(n, n);
        for (const auto& m : a) product *= m;
        json list = json::array();
        for (const auto& m : a) list.push_back(to_json(m));
        out["matrices"] = list;
        out["identity_residual"] = (product - Matrix::Identity(n, n)).norm();
      }
      emit(out, out_path);
      return 0;
    }
    if (*decompose_cmd) {
      const Configuration cfg = configuration_from_json(load_json(in_path));
      const std::optional<std::vector<Matrix>> chain = decompose_witness(cfg, tol);
      if (!chain) {
        emit(json{{"status", "NoWitness"}, {"tol", tol}}, out_path);
        return kExitNoCertificate;
      }
      double residual = 0.0;
      const int l = static_cast<int>(chain->size());
      for (int j = 0; j < l; ++j)
        residual = std::max(residual, ((*chain)[j] * (*chain)[(j + 1) % l].adjoint() -
                                       cfg.punctures()[j])
                                          .norm());
      json list = json::array();
      for (const auto& w : *chain) list.push_back(to_json(w));
      emit(json{{"status", "Decomposed"}, {"chain", list}, {"chain_residual", residual},
                {"tol", tol}},
           out_path);
      return 0;
    }

    ProblemSpec spec = load_spec(spec_path);
    if (seed_flag) spec.seed = *seed_flag;
    if (samples_flag) spec.samples = *samples_flag;
    solve_opts.seed = spec.seed;
    CLI::App* active = app.get_subcommands().front();
    const CLI::Option* residual_opt = active->get_option_no_throw("--residual-tol");
    if (!residual_opt || residual_opt->count() == 0)
      solve_opts.residual_tol = spec.residual_tol;

    if (*sample_cmd) {
      const double cell_tol = sample_cmd->count("--tol") ? tol : spec.classify_tol;
      const AlcoveCloud cloud = sample_polytope(spec.data, spec.samples, spec.seed, jobs);
      write_cloud(cloud, out_path, cell_tol);
      if (!out_path.empty())
        std::cout << json{{"points", cloud.points.size()},
                          {"rejected", cloud.rejected},
                          {"seed", spec.seed},
                          {"tol", cell_tol}}
                         .dump()
                  << "\n";
      return 0;
    }
    if (*real_cmd) {
      const double cell_tol = real_cmd->count("--tol") ? tol : spec.classify_tol;
      const AlcoveCloud cloud =
          sample_real_polytope(spec.data, spec.samples, spec.seed, solve_opts, jobs);
      write_cloud(cloud, out_path, cell_tol);
      if (!out_path.empty())
        std::cout << json{{"points", cloud.points.size()},
                          {"rejected", cloud.rejected},
                          {"seed", spec.seed},
                          {"tol", cell_tol},
                          {"residual_tol", solve_opts.residual_tol}}
                         .dump()
                  << "\n";
      return 0;
    }
    if (*convex_cmd) {
      const AlcoveCloud cloud = sample_polytope(spec.data, spec.samples, spec.seed, jobs);
      const ConvexityReport report = verify_convexity(cloud, pairs, solve_opts, jobs);
      json out = to_json(report);
      out["samples"] = spec.samples;
      out["seed"] = spec.seed;
      emit(out, out_path);
      return 0;
    }
    if (*real_eq_cmd) {
      const AlcoveCloud full = sample_polytope(spec.data, spec.samples, spec.seed, jobs);
      const int n_real = real_samples > 0 ? real_samples : std::max(20, spec.samples / 100);
      const AlcoveCloud real_cloud =
          sample_real_polytope(spec.data, n_real, spec.seed + 1, solve_opts, jobs);
      const RealEqualityReport report =
          verify_real_equality(full, real_cloud, grid, solve_opts, jobs);
      json out = to_json(report);
      out["samples"] = spec.samples;
      out["real_samples"] = n_real;
      out["real_rejected"] = real_cloud.rejected;
      out["seed"] = spec.seed;
      emit(out, out_path);
      return 0;
    }
    if (*solve_cmd) {
      const AlcovePoint target(parse_reals(target_text));
      const FeasibilityReport report =
          symmetric ? solve_fiber_symmetric(spec.data, target, solve_opts)
                    : solve_fiber(spec.data, target, solve_opts);
      emit(to_json(report, solve_opts, with_witness), out_path);
      return report.status == SolveStatus::Converged ? 0 : kExitNoCertificate;
    }
    if (*grad_cmd) {
      RandomStream rng(spec.seed);
      const Configuration cfg = sample_configuration(spec.data, rng);
      const AlcovePoint target = spectrum_to_alcove(moment(sample_configuration(spec.data, rng)));
      const double value = gradient_check(spec.data, target, cfg, eps, symmetric);
      emit(json{{"gradient_check", value}, {"eps", eps}, {"seed", spec.seed}}, out_path);
      return 0;
    }
  } catch (const Error& e) {
    std::cout << json{{"error", e.what()}}.dump() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    std::cout << json{{"error", e.what()}}.dump() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace alcove
