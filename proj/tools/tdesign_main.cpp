// Command-line front end: generate or load a configuration, run the
// Barzilai-Borwein (or quasi-Newton) descent, certify the result, and
// export points / trace / certificate. Data goes to stdout or the chosen
// files; diagnostics go to stderr.
//
// Exit codes: 0 success (design: certified; verify: certified; compare:
// all rows completed), 2 finished without certification, 1 error.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tdesign/geometry.hpp"
#include "tdesign/objective.hpp"
#include "tdesign/optimizer.hpp"
#include "tdesign/verifier.hpp"

namespace {

using namespace tdesign;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUncertified = 2;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CommonOptions {
  std::string init = "spiral";
  std::uint64_t seed = 0;
  BBConfig cfg;

  void attach(CLI::App* cmd, bool with_init) {
    if (with_init) {
      cmd->add_option("--init", init, "Initial configuration")
          ->check(CLI::IsMember({"spiral", "random", "file"}))
          ->capture_default_str();
      cmd->add_option("--seed", seed, "Seed for --init random")
          ->capture_default_str();
    }
    cmd->add_option("--max-iter", cfg.k_max, "Maximum iterations")
        ->capture_default_str();
    cmd->add_option("--eps1", cfg.eps1, "Gradient-change tolerance")
        ->capture_default_str();
    cmd->add_option("--eps2", cfg.eps2, "Progress tolerance")
        ->capture_default_str();
    cmd->add_option("--rho", cfg.rho, "Armijo-Goldstein parameter")
        ->capture_default_str();
    cmd->add_option("--tau", cfg.tau, "Backtracking factor")
        ->capture_default_str();
    cmd->add_option("--grad-tol", cfg.grad_tol,
                    "Stationarity tolerance on the max-norm of the gradient")
        ->capture_default_str();
    cmd->add_option("--max-backtracks", cfg.max_backtracks,
                    "Backtracking step limit")
        ->capture_default_str();
    cmd->add_option("--alpha-min", cfg.alpha_clamp_low,
                    "Step-size reset guard (lower)")
        ->capture_default_str();
    cmd->add_option("--alpha-max", cfg.alpha_clamp_high,
                    "Step-size reset guard (upper)")
        ->capture_default_str();
  }
};

CartesianPointSet make_initial(const std::string& init, int n,
                               std::uint64_t seed,
                               const std::string& input_path) {
  if (init == "spiral") return spiral_points(n);
  if (init == "random") return random_points(n, seed);
  if (input_path.empty())
    throw std::invalid_argument("--init file requires --in");
  return read_points_file(input_path);
}

OptimizeResult run_method(const std::string& method, const AngleVector& start,
                          int t, const BBConfig& cfg) {
  return method == "qn" ? qn_minimize(start, t, cfg)
                        : bb_minimize(start, t, cfg);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

int cmd_design(int t, std::optional<int> n_opt, const std::string& method,
               const CommonOptions& common, const std::string& input_path,
               const std::string& out_path, const std::string& trace_path,
               const std::string& cert_path) {
  const int n = n_opt.value_or((t + 2) * (t + 2));
  if (n < 2) throw std::invalid_argument("need at least two points");

  CartesianPointSet initial =
      make_initial(common.init, n, common.seed, input_path);
  const AngleVector start = to_angles(gauge_fix(initial));
  const OptimizeResult result = run_method(method, start, t, common.cfg);
  const DesignCertificate cert =
      verify_design(result.final_points.as_point_set(), t);

  if (!out_path.empty())
    write_points_file(out_path, result.final_points.as_point_set());
  if (!trace_path.empty())
    write_text_file(trace_path, trace_to_json(result.trace));
  if (!cert_path.empty())
    write_text_file(cert_path, certificate_to_json(cert));

  // Summary row: t+1, N, iterations, A, ||grad||_inf, time, sigma_min.
  std::cout << t + 1 << "," << n << "," << result.iterations << ","
            << fmt(cert.a_value) << "," << fmt(cert.grad_inf_norm) << ","
            << fmt(result.wall_time) << "," << fmt(cert.sigma_min) << "\n";
  std::cerr << "termination: " << to_string(result.termination)
            << ", verdict: " << to_string(cert.verdict) << "\n";
  return cert.verdict == Verdict::certified_design ? kExitOk
                                                   : kExitUncertified;
}

int cmd_verify(const std::string& input_path, int t, double stat_tol,
               double rank_tol) {
  const CartesianPointSet points = read_points_file(input_path);
  const DesignCertificate cert = verify_design(points, t, stat_tol, rank_tol);
  std::cout << certificate_to_json(cert);
  return cert.verdict == Verdict::certified_design ? kExitOk
                                                   : kExitUncertified;
}

int cmd_compare(const std::vector<std::string>& pair_specs,
                const CommonOptions& common, const std::string& out_path) {
  std::string csv =
      "t_plus_1,n,method,iterations,a_value,grad_inf,time_s,sigma_min\n";
  bool any_failed = false;
  for (const std::string& spec : pair_specs) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("pair '" + spec + "' is not of form t:n");
    const int t = std::stoi(spec.substr(0, colon));
    const int n = std::stoi(spec.substr(colon + 1));
    if (t < 1 || n < 2)
      throw std::invalid_argument("pair '" + spec + "' out of range");

    // Both methods start from the identical initial configuration.
    CartesianPointSet initial = make_initial(common.init, n, common.seed, "");
    const AngleVector start = to_angles(gauge_fix(initial));
    for (const char* method : {"bb", "qn"}) {
      try {
        const OptimizeResult result =
            run_method(method, start, t, common.cfg);
        const DesignCertificate cert =
            verify_design(result.final_points.as_point_set(), t);
        csv += std::to_string(t + 1) + "," + std::to_string(n) + "," +
               method + "," + std::to_string(result.iterations) + "," +
               fmt(cert.a_value) + "," + fmt(cert.grad_inf_norm) + "," +
               fmt(result.wall_time) + "," + fmt(cert.sigma_min) + "\n";
      } catch (const std::exception& e) {
        std::cerr << "pair " << spec << " method " << method
                  << " failed: " << e.what() << "\n";
        csv += std::to_string(t + 1) + "," + std::to_string(n) + "," +
               method + ",nan,nan,nan,nan,nan\n";
        any_failed = true;
      }
    }
  }
  if (out_path.empty())
    std::cout << csv;
  else
    write_text_file(out_path, csv);
  return any_failed ? kExitError : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical spherical t-designs by gradient descent"};
  app.require_subcommand(1);

  // design
  auto* design = app.add_subcommand(
      "design", "Optimize a configuration and certify the result");
  int t = 0;
  std::optional<int> n_opt;
  std::string method = "bb";
  std::string input_path, out_path, trace_path, cert_path;
  CommonOptions design_common;
  design->add_option("--t", t, "Design degree")->required();
  design->add_option("--n", n_opt, "Number of points (default (t+2)^2)");
  design->add_option("--method", method, "Optimizer")
      ->check(CLI::IsMember({"bb", "qn"}))
      ->capture_default_str();
  design->add_option("--in", input_path, "Point file for --init file");
  design->add_option("--out", out_path, "Write final points here");
  design->add_option("--trace", trace_path, "Write iteration trace (JSON)");
  design->add_option("--cert", cert_path, "Write certificate (JSON)");
  design_common.attach(design, /*with_init=*/true);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Certify an existing point file against Theorem-style checks");
  int verify_t = 0;
  std::string verify_in;
  double stat_tol = 1e-7, rank_tol = 1e-8;
  verify->add_option("--t", verify_t, "Design degree")->required();
  verify->add_option("--in", verify_in, "Point file")->required();
  verify->add_option("--stat-tol", stat_tol, "Stationarity tolerance")
      ->capture_default_str();
  verify->add_option("--rank-tol", rank_tol, "Relative rank tolerance")
      ->capture_default_str();

  // compare
  auto* compare = app.add_subcommand(
      "compare", "Run BB and QN from identical starts over (t, n) pairs");
  std::vector<std::string> pair_specs;
  std::string compare_out;
  CommonOptions compare_common;
  compare->add_option("--pairs", pair_specs, "Pairs t:n (repeatable)");
  compare->add_option("--out", compare_out, "Write CSV here (default stdout)");
  compare_common.attach(compare, /*with_init=*/true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (design->parsed()) {
      if (t < 1) throw std::invalid_argument("--t must be >= 1");
      return cmd_design(t, n_opt, method, design_common, input_path, out_path,
                        trace_path, cert_path);
    }
    if (verify->parsed()) {
      if (verify_t < 1) throw std::invalid_argument("--t must be >= 1");
      return cmd_verify(verify_in, verify_t, stat_tol, rank_tol);
    }
    if (compare->parsed())
      return cmd_compare(pair_specs, compare_common, compare_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
