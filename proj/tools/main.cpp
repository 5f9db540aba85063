#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "bfgslab/analytic.hpp"
#include "bfgslab/bfgs.hpp"
#include "bfgslab/errors.hpp"
#include "bfgslab/experiments.hpp"
#include "bfgslab/matspec.hpp"
#include "bfgslab/oracle.hpp"
#include "bfgslab/smooth_check.hpp"
#include "bfgslab/trace_io.hpp"
#include "bfgslab/verifier.hpp"

namespace {

using namespace bfgslab;

int cmd_run(const std::string& function, const std::string& x0_text, const std::string& h0_spec,
            double mu, double nu, int max_iter, double gap, const std::string& grad_tol,
            const std::string& trace_path) {
  const FunctionOracle oracle = make_oracle(function);
  const auto coords = parse_number_list(x0_text);
  Vector x0(static_cast<Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) x0[static_cast<Index>(i)] = coords[i];
  const Matrix h0 = parse_matrix_spec(h0_spec, oracle.dim());

  LineSearchParams params;
  params.mu = mu;
  params.nu = nu;
  StoppingRule stop;
  stop.max_iters = max_iter;
  stop.f_gap_rel = gap;
  if (!grad_tol.empty()) stop.grad_tol = std::stod(grad_tol);

  const Trace trace = run(oracle, x0, h0, params, stop);
  const TraceRecord& last = trace.records.back();
  std::cout << "status=" << to_string(trace.status) << " iterations=" << trace.steps()
            << " evals=" << trace.total_evals() << " f=" << format_double(last.f)
            << " gnorm=" << format_double(last.g.size() ? last.g.norm() : 0.0);
  if (oracle.known_min())
    std::cout << " gap=" << format_double(last.f - *oracle.known_min());
  std::cout << '\n';
  if (!trace_path.empty()) {
    write_trace_csv(std::filesystem::path(trace_path), trace);
    std::cout << "trace written to " << trace_path << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& sequence_path, const std::string& function,
               const std::string& h0_spec, double mu, double nu, double tol,
               const std::string& report_path) {
  const FunctionOracle oracle = make_oracle(function);
  const auto points = read_sequence_csv(std::filesystem::path(sequence_path));
  const Matrix h0 = parse_matrix_spec(h0_spec, oracle.dim());

  VerificationReport report;
  try {
    report = verify_sequence(oracle, points, h0, mu, nu, tol);
  } catch (const NonsmoothIterate& e) {
    std::cout << "FAIL: " << e.what() << '\n';
    return 1;
  } catch (const ZeroGradient& e) {
    std::cout << "FAIL: " << e.what() << '\n';
    return 1;
  }

  if (!report_path.empty()) {
    std::ofstream os(report_path);
    if (!os) throw std::runtime_error("cannot open '" + report_path + "' for writing");
    write_report_csv(os, report);
  } else {
    write_report_csv(std::cout, report);
  }

  if (report.pass) {
    std::cout << "PASS: BFGS sequence conditions hold (steps=" << report.steps.size()
              << ", mu=" << format_double(mu) << ", nu=" << format_double(nu)
              << ", tol=" << format_double(tol) << ")\n";
    return 0;
  }
  for (const StepCheck& c : report.steps) {
    if (c.pass()) continue;
    const char* which = !c.armijo_ok     ? "sufficient decrease"
                        : !c.wolfe_ok    ? "curvature inequality"
                        : !c.direction_ok || !c.multiplier_ok ? "direction inclusion"
                                         : "curvature product";
    std::cout << "FAIL: step k=" << c.k << " violates " << which
              << " (armijo_slack=" << format_double(c.armijo_slack)
              << ", wolfe_slack=" << format_double(c.wolfe_slack)
              << ", direction_residual=" << format_double(c.direction_residual)
              << ", s'y=" << format_double(c.curvature) << ")\n";
    return 1;
  }
  std::cout << "FAIL: update recursion aborted (s'y <= 0)\n";
  return 1;
}

int cmd_analytic(const std::string& which, int kmax, bool check_h, const std::string& emit_path) {
  const AnalyticExample example = which == "prop32" ? quad_abs_example() : norm_spiral_example();
  std::cout << example.name << ": oracle=" << example.oracle.name()
            << " admissible_mu_sup=" << format_double(example.admissible_mu_sup)
            << " kmax=" << kmax << '\n';
  if (check_h) {
    if (example.has_closed_form_h()) {
      const double dev = check_closed_form_h(example, kmax);
      std::cout << "closed-form H check: max relative deviation=" << format_double(dev) << '\n';
    } else {
      const auto ratios = eig_asymptotics(kmax);
      double worst = 0.0;
      for (const EigRatio& r : ratios)
        worst = std::max({worst, std::abs(r.lo - 1.0), std::abs(r.hi - 1.0)});
      const EigRatio& last = ratios.back();
      std::cout << "eigenvalue trend check: max |ratio-1|=" << format_double(worst)
                << " (k=" << last.k << ": lo=" << format_double(last.lo)
                << ", hi=" << format_double(last.hi) << ")\n";
    }
  }
  if (!emit_path.empty()) {
    write_trace_csv(std::filesystem::path(emit_path), analytic_trace(example, kmax));
    std::cout << "sequence written to " << emit_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BFGS laboratory for nonsmooth convex minimization"};
  app.set_config("--config", "", "read options from a key = value file");
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "single BFGS run");
  std::string run_function, run_x0, run_h0 = "identity", run_trace, run_grad_tol;
  double run_mu = 1e-4, run_nu = 0.9, run_gap = 1e-12;
  int run_max_iter = 500;
  run_cmd->add_option("--function", run_function, "oracle name")->required();
  run_cmd->add_option("--x0", run_x0, "starting point, comma separated")->required();
  run_cmd->add_option("--h0", run_h0, "initial inverse Hessian (identity | diag:... | full:...)");
  run_cmd->add_option("--mu", run_mu, "Armijo parameter");
  run_cmd->add_option("--nu", run_nu, "Wolfe parameter");
  run_cmd->add_option("--max-iter", run_max_iter, "iteration cap");
  run_cmd->add_option("--gap", run_gap,
                      "stop when (f - min)/(f0 - min) <= gap (needs a known minimum)");
  run_cmd->add_option("--grad-tol", run_grad_tol, "stop when |g| <= this");
  run_cmd->add_option("--trace", run_trace, "write the trace CSV here");

  // experiment fig1 / norm-sweep
  auto* exp_cmd = app.add_subcommand("experiment", "batch experiments");
  exp_cmd->require_subcommand(1);

  auto* fig1_cmd = exp_cmd->add_subcommand("fig1", "seeded random-start batch on quad_abs");
  ExperimentConfig fig1_cfg;
  std::string fig1_out;
  fig1_cmd->add_option("--function", fig1_cfg.oracle, "oracle name");
  fig1_cmd->add_option("--runs", fig1_cfg.runs, "number of runs");
  fig1_cmd->add_option("--seed", fig1_cfg.seed, "master seed");
  fig1_cmd->add_option("--out", fig1_out, "output directory")->required();
  fig1_cmd->add_flag("--svg", fig1_cfg.svg, "also render semilog SVG plots");
  fig1_cmd->add_option("--h0", fig1_cfg.h0, "initial inverse Hessian");
  fig1_cmd->add_option("--mu", fig1_cfg.search.mu, "Armijo parameter");
  fig1_cmd->add_option("--nu", fig1_cfg.search.nu, "Wolfe parameter");
  fig1_cmd->add_option("--max-iter", fig1_cfg.stop.max_iters, "iteration cap per run");
  double fig1_gap = 1e-12;
  fig1_cmd->add_option("--gap", fig1_gap, "normalized stopping gap per run");
  fig1_cmd->add_option("--threshold", fig1_cfg.report_threshold,
                       "normalized mark reported as reached in summaries");

  auto* sweep_cmd = exp_cmd->add_subcommand("norm-sweep", "Euclidean-norm convergence sweep");
  std::string sweep_dims = "2,4,8", sweep_out;
  int sweep_runs = 200, sweep_max_iter = 200;
  double sweep_eps = 1e-6;
  std::uint64_t sweep_seed = 42;
  sweep_cmd->add_option("--dims", sweep_dims, "dimensions, comma separated");
  sweep_cmd->add_option("--runs", sweep_runs, "runs per dimension");
  sweep_cmd->add_option("--eps", sweep_eps, "target value");
  sweep_cmd->add_option("--seed", sweep_seed, "master seed");
  sweep_cmd->add_option("--max-iter", sweep_max_iter, "iteration cap per run");
  sweep_cmd->add_option("--out", sweep_out, "output directory")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "certify a sequence CSV");
  std::string ver_sequence, ver_function, ver_h0, ver_report;
  double ver_mu = 0, ver_nu = 0, ver_tol = 1e-9;
  verify_cmd->add_option("--sequence", ver_sequence, "sequence CSV (trace schema)")->required();
  verify_cmd->add_option("--function", ver_function, "oracle name")->required();
  verify_cmd->add_option("--h0", ver_h0, "initial inverse Hessian")->required();
  verify_cmd->add_option("--mu", ver_mu, "Armijo parameter")->required();
  verify_cmd->add_option("--nu", ver_nu, "Wolfe parameter")->required();
  verify_cmd->add_option("--tol", ver_tol, "relative tolerance");
  verify_cmd->add_option("--report", ver_report, "write the per-step report CSV here");

  // analytic
  auto* analytic_cmd = app.add_subcommand("analytic", "closed-form example sequences");
  std::string ana_which;
  int ana_kmax = 25;
  bool ana_check_h = false;
  std::string ana_emit;
  analytic_cmd->add_option("which", ana_which, "prop32 | norm")
      ->required()
      ->check(CLI::IsMember({"prop32", "norm"}));
  analytic_cmd->add_option("--kmax", ana_kmax, "last iterate index");
  analytic_cmd->add_flag("--check-h", ana_check_h,
                         "check the recursion against the closed-form H (prop32) or the "
                         "eigenvalue trend (norm)");
  analytic_cmd->add_option("--emit", ana_emit, "write the sequence as trace-schema CSV");

  // smooth-check
  auto* smooth_cmd = app.add_subcommand("smooth-check", "property suite for the smoothings");
  double smc_delta = 0;
  int smc_samples = 200;
  std::uint64_t smc_seed = 1;
  smooth_cmd->add_option("--delta", smc_delta, "smoothing radius")->required();
  smooth_cmd->add_option("--samples", smc_samples, "sample count per check");
  smooth_cmd->add_option("--seed", smc_seed, "sampling seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed())
      return cmd_run(run_function, run_x0, run_h0, run_mu, run_nu, run_max_iter, run_gap,
                     run_grad_tol, run_trace);
    if (fig1_cmd->parsed()) {
      fig1_cfg.out_dir = fig1_out;
      fig1_cfg.stop.f_gap_rel = fig1_gap;
      const BatchResult result = fig1_experiment(fig1_cfg);
      std::cout << "runs=" << fig1_cfg.runs
                << " reached_threshold=" << format_double(result.fraction_reached)
                << " median_slope=" << format_double(result.median_slope)
                << " max_min_kink_distance=" << format_double(result.max_min_kink_distance)
                << "\noutputs in " << fig1_out << '\n';
      return 0;
    }
    if (sweep_cmd->parsed()) {
      std::vector<Index> dims;
      for (double d : parse_number_list(sweep_dims)) dims.push_back(static_cast<Index>(d));
      const auto rows =
          norm_convergence_sweep(dims, sweep_runs, sweep_eps, sweep_seed, sweep_max_iter,
                                 std::filesystem::path(sweep_out));
      for (const DimSweepRow& r : rows) {
        std::cout << "n=" << r.dim << " runs=" << r.runs
                  << " reached=" << format_double(r.fraction_reached)
                  << " nonsmooth_hit=" << format_double(r.fraction_nonsmooth_hit)
                  << " success=" << format_double(r.fraction_success) << '\n';
      }
      return 0;
    }
    if (verify_cmd->parsed())
      return cmd_verify(ver_sequence, ver_function, ver_h0, ver_mu, ver_nu, ver_tol, ver_report);
    if (analytic_cmd->parsed()) return cmd_analytic(ana_which, ana_kmax, ana_check_h, ana_emit);
    if (smooth_cmd->parsed())
      return smooth_check(smc_delta, smc_samples, smc_seed, std::cout) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
