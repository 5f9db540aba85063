#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bfgslab/bfgs.hpp"
#include "bfgslab/line_search.hpp"
#include "bfgslab/oracle.hpp"

namespace bfgslab {

/// Starting-point distribution. Points closer than kink_margin to the
/// oracle's nonsmooth set are resampled.
struct SamplingLaw {
  enum class Kind { Box, Sphere };
  Kind kind = Kind::Box;
  double lo = -1.0, hi = 1.0;  // box bounds
  double radius = 1.0;         // sphere radius
  double kink_margin = 1e-12;
};

struct ExperimentConfig {
  std::string oracle = "quad_abs";
  int runs = 1000;
  std::uint64_t seed = 42;
  SamplingLaw sampling{};
  std::string h0 = "identity";
  LineSearchParams search{};               // defaults: mu = 1e-4, nu = 0.9
  StoppingRule stop{120, {}, 1e-12, {}};
  double report_threshold = 1e-8;          // normalized-value mark used in summaries
  double rate_tail_fraction = 0.5;
  std::filesystem::path out_dir;
  bool svg = false;
  bool write_run_traces = true;
};

struct RunSummary {
  int run_index = 0;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::MaxIterations;
  int iterations = 0;
  long total_evals = 0;
  double final_fnorm = 1.0;       // (f_last - min) / (f_0 - min); first value is 1 exactly
  int iters_to_threshold = -1;    // first k with normalized value <= threshold, -1 if never
  std::optional<double> slope;    // fitted linear rate over the tail, when defined
  double min_kink_distance = std::numeric_limits<double>::infinity();
  bool certified = false;         // trace re-verified against the batch H0, mu, nu
};

struct BatchResult {
  std::vector<RunSummary> summaries;
  std::vector<Trace> traces;
  double fraction_reached = 0.0;  // runs whose normalized value hit the threshold
  double median_slope = 0.0;      // over runs with a fitted slope
  double max_min_kink_distance = 0.0;
};

/// Batch of seeded BFGS runs on the configured oracle. Writes summary.csv,
/// series.csv (normalized value against iteration and cumulative evaluation
/// count), quantiles.csv, reference.csv (the 4^-k guide line), approach.csv,
/// config.txt, per-run trace CSVs, and optional semilog SVG plots under
/// cfg.out_dir. Per-run line-search failures are recorded in the summaries
/// and never abort the batch. Identical configs produce bit-identical CSVs.
BatchResult fig1_experiment(const ExperimentConfig& cfg);

/// Least-squares slope of log2(f_k - known_min) against k over the last
/// tail_fraction of the records with a positive gap. Exactly -2 for 4^-k
/// decay. Throws InsufficientData with fewer than five such records.
double rate_fit(const std::vector<double>& values, double known_min, double tail_fraction);
double rate_fit(const Trace& trace, double known_min, double tail_fraction = 1.0);

struct DimSweepRow {
  Index dim = 0;
  int runs = 0;
  double eps = 0.0;
  double fraction_reached = 0.0;        // runs ending with f <= eps
  double fraction_nonsmooth_hit = 0.0;  // runs stopped at a nonsmooth point with f <= eps
  double fraction_success = 0.0;        // either of the above
  double certified_fraction = 0.0;
};

/// Euclidean-norm convergence study across dimensions: runs_per_dim seeded
/// starts on the unit sphere per dimension, H0 = I, mu = 1e-4, nu = 0.9,
/// stopping at f <= eps. Writes norm_sweep.csv plus per-dimension run
/// summaries when out_dir is nonempty.
std::vector<DimSweepRow> norm_convergence_sweep(const std::vector<Index>& dims, int runs_per_dim,
                                                double eps, std::uint64_t seed,
                                                int max_iters = 200,
                                                const std::filesystem::path& out_dir = {});

struct ApproachStats {
  std::vector<double> per_run_min;  // min over k of the iterate's kink distance
  double max_over_runs = 0.0;
};

/// How closely each run approached the oracle's nonsmooth set (for quad_abs,
/// min over k of |v_k|), and the worst such minimum across runs.
ApproachStats nonsmooth_approach(const std::vector<Trace>& traces, const FunctionOracle& oracle);

/// Running minimum of the iterates' kink distance along one trace.
std::vector<double> running_min_kink_distance(const Trace& trace, const FunctionOracle& oracle);

}  // namespace bfgslab
