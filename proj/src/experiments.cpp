#include "bfgslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "bfgslab/errors.hpp"
#include "bfgslab/matspec.hpp"
#include "bfgslab/rng.hpp"
#include "bfgslab/svg_plot.hpp"
#include "bfgslab/trace_io.hpp"
#include "bfgslab/verifier.hpp"

namespace bfgslab {

namespace {

namespace fs = std::filesystem;

Vector sample_start(Rng& rng, const FunctionOracle& oracle, const SamplingLaw& law) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vector x = law.kind == SamplingLaw::Kind::Box
                   ? rng.uniform_box(oracle.dim(), law.lo, law.hi)
                   : Vector(law.radius * rng.unit_sphere(oracle.dim()));
    if (oracle.kink_distance(x) >= law.kink_margin) return x;
  }
  throw std::runtime_error("could not sample a starting point away from the nonsmooth set");
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return os;
}

// Verify the run's own trace against the batch H0 and parameters. A final
// zero-gradient record is dropped first: the conditions need gradients at
// every point.
bool certify(const FunctionOracle& oracle, const Trace& trace, const Matrix& h0,
             const LineSearchParams& p) {
  std::vector<Vector> pts = trace.points();
  if (trace.status == RunStatus::GradientVanished && !pts.empty()) pts.pop_back();
  if (pts.size() < 2) return true;
  return verify_sequence(oracle, pts, h0, p.mu, p.nu, 1e-9).pass;
}

double quantile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

}  // namespace

double rate_fit(const std::vector<double>& values, double known_min, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw std::invalid_argument("tail_fraction must lie in (0, 1]");
  std::vector<std::pair<int, double>> pts;  // (k, log2 gap)
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double gap = values[k] - known_min;
    if (gap > 0.0) pts.emplace_back(static_cast<int>(k), std::log2(gap));
  }
  if (pts.size() < 5) throw InsufficientData();

  const std::size_t keep = std::max<std::size_t>(
      5, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(pts.size()))));
  const std::size_t first = pts.size() - std::min(keep, pts.size());

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double n = 0.0;
  for (std::size_t i = first; i < pts.size(); ++i) {
    const double x = pts[i].first;
    const double y = pts[i].second;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1.0;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double rate_fit(const Trace& trace, double known_min, double tail_fraction) {
  std::vector<double> values;
  values.reserve(trace.records.size());
  for (const TraceRecord& r : trace.records) values.push_back(r.f);
  return rate_fit(values, known_min, tail_fraction);
}

std::vector<double> running_min_kink_distance(const Trace& trace, const FunctionOracle& oracle) {
  std::vector<double> out;
  out.reserve(trace.records.size());
  double best = std::numeric_limits<double>::infinity();
  for (const TraceRecord& r : trace.records) {
    best = std::min(best, oracle.kink_distance(r.x));
    out.push_back(best);
  }
  return out;
}

ApproachStats nonsmooth_approach(const std::vector<Trace>& traces, const FunctionOracle& oracle) {
  ApproachStats stats;
  stats.per_run_min.reserve(traces.size());
  for (const Trace& t : traces) {
    double best = std::numeric_limits<double>::infinity();
    for (const TraceRecord& r : t.records) best = std::min(best, oracle.kink_distance(r.x));
    stats.per_run_min.push_back(best);
    stats.max_over_runs = std::max(stats.max_over_runs, best);
  }
  return stats;
}

BatchResult fig1_experiment(const ExperimentConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("run count must be >= 1");
  if (cfg.out_dir.empty()) throw std::invalid_argument("output directory required");
  const FunctionOracle oracle = make_oracle(cfg.oracle);
  if (!oracle.known_min())
    throw std::invalid_argument("experiment oracle needs a known minimum to normalize values");
  const double fmin = *oracle.known_min();
  const Matrix h0 = parse_matrix_spec(cfg.h0, oracle.dim());

  fs::create_directories(cfg.out_dir);
  if (cfg.write_run_traces) fs::create_directories(cfg.out_dir / "runs");

  BatchResult result;
  result.summaries.reserve(cfg.runs);
  result.traces.reserve(cfg.runs);

  for (int i = 0; i < cfg.runs; ++i) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    Rng rng(run_seed);
    const Vector x0 = sample_start(rng, oracle, cfg.sampling);
    Trace trace = run(oracle, x0, h0, cfg.search, cfg.stop);

    RunSummary s;
    s.run_index = i;
    s.seed = run_seed;
    s.status = trace.status;
    s.iterations = trace.steps();
    s.total_evals = trace.total_evals();
    const double gap0 = trace.records.front().f - fmin;
    for (const TraceRecord& r : trace.records) {
      const double fnorm = (r.f - fmin) / gap0;
      if (s.iters_to_threshold < 0 && fnorm <= cfg.report_threshold) s.iters_to_threshold = r.k;
      s.min_kink_distance = std::min(s.min_kink_distance, oracle.kink_distance(r.x));
    }
    s.final_fnorm = (trace.records.back().f - fmin) / gap0;
    try {
      s.slope = rate_fit(trace, fmin, cfg.rate_tail_fraction);
    } catch (const InsufficientData&) {
      s.slope = std::nullopt;
    }
    s.certified = certify(oracle, trace, h0, cfg.search);

    if (cfg.write_run_traces) {
      char name[32];
      std::snprintf(name, sizeof(name), "run_%04d.csv", i);
      write_trace_csv(cfg.out_dir / "runs" / name, trace);
    }
    result.summaries.push_back(s);
    result.traces.push_back(std::move(trace));
  }

  // Aggregates.
  int reached = 0;
  std::vector<double> slopes;
  for (const RunSummary& s : result.summaries) {
    if (s.iters_to_threshold >= 0) ++reached;
    if (s.slope) slopes.push_back(*s.slope);
  }
  result.fraction_reached = static_cast<double>(reached) / cfg.runs;
  if (!slopes.empty()) {
    std::sort(slopes.begin(), slopes.end());
    const std::size_t m = slopes.size();
    result.median_slope = m % 2 ? slopes[m / 2] : 0.5 * (slopes[m / 2 - 1] + slopes[m / 2]);
  }
  result.max_min_kink_distance = nonsmooth_approach(result.traces, oracle).max_over_runs;

  // summary.csv
  {
    auto os = open_out(cfg.out_dir / "summary.csv");
    os << "run,seed,status,iterations,total_evals,final_fnorm,iters_to_threshold,slope,"
          "min_kink_distance,certified\n";
    for (const RunSummary& s : result.summaries) {
      os << s.run_index << ',' << s.seed << ',' << to_string(s.status) << ',' << s.iterations
         << ',' << s.total_evals << ',' << format_double(s.final_fnorm) << ','
         << s.iters_to_threshold << ',' << (s.slope ? format_double(*s.slope) : "") << ','
         << format_double(s.min_kink_distance) << ',' << (s.certified ? 1 : 0) << '\n';
    }
  }

  // series.csv: normalized value against both iteration count and cumulative
  // oracle-evaluation count (the evaluation that produced f_k is included).
  int k_max = 0;
  {
    auto os = open_out(cfg.out_dir / "series.csv");
    os << "run,k,cum_evals,fnorm\n";
    for (std::size_t i = 0; i < result.traces.size(); ++i) {
      const Trace& t = result.traces[i];
      const double gap0 = t.records.front().f - fmin;
      long cum = 1;
      for (const TraceRecord& r : t.records) {
        os << i << ',' << r.k << ',' << cum << ',' << format_double((r.f - fmin) / gap0) << '\n';
        cum += r.evals;
        k_max = std::max(k_max, r.k);
      }
    }
  }

  // reference.csv: the 4^-k guide line.
  {
    auto os = open_out(cfg.out_dir / "reference.csv");
    os << "k,ref\n";
    for (int k = 0; k <= k_max; ++k)
      os << k << ',' << format_double(std::ldexp(1.0, -2 * k)) << '\n';
  }

  // quantiles.csv over runs still active at each k.
  {
    auto os = open_out(cfg.out_dir / "quantiles.csv");
    os << "k,count,q10,q25,q50,q75,q90\n";
    for (int k = 0; k <= k_max; ++k) {
      std::vector<double> at_k;
      for (const Trace& t : result.traces) {
        if (k < static_cast<int>(t.records.size())) {
          const double gap0 = t.records.front().f - fmin;
          at_k.push_back((t.records[k].f - fmin) / gap0);
        }
      }
      if (at_k.empty()) continue;
      std::sort(at_k.begin(), at_k.end());
      os << k << ',' << at_k.size();
      for (double q : {0.10, 0.25, 0.50, 0.75, 0.90})
        os << ',' << format_double(quantile(at_k, q));
      os << '\n';
    }
  }

  // approach.csv
  {
    auto os = open_out(cfg.out_dir / "approach.csv");
    os << "run,min_kink_distance\n";
    for (const RunSummary& s : result.summaries)
      os << s.run_index << ',' << format_double(s.min_kink_distance) << '\n';
  }

  // config.txt: reusable key = value echo of the batch settings.
  {
    auto os = open_out(cfg.out_dir / "config.txt");
    os << "[experiment.fig1]\n"
       << "function = " << cfg.oracle << '\n'
       << "runs = " << cfg.runs << '\n'
       << "seed = " << cfg.seed << '\n'
       << "h0 = " << cfg.h0 << '\n'
       << "mu = " << format_double(cfg.search.mu) << '\n'
       << "nu = " << format_double(cfg.search.nu) << '\n'
       << "max-iter = " << cfg.stop.max_iters << '\n'
       << "gap = " << (cfg.stop.f_gap_rel ? format_double(*cfg.stop.f_gap_rel) : "0") << '\n'
       << "threshold = " << format_double(cfg.report_threshold) << '\n'
       << "svg = " << (cfg.svg ? "true" : "false") << '\n';
  }

  if (cfg.svg) {
    std::vector<SvgSeries> by_iter, by_eval;
    by_iter.reserve(result.traces.size());
    by_eval.reserve(result.traces.size());
    for (const Trace& t : result.traces) {
      SvgSeries si, se;
      const double gap0 = t.records.front().f - fmin;
      long cum = 1;
      for (const TraceRecord& r : t.records) {
        const double fnorm = (r.f - fmin) / gap0;
        si.x.push_back(r.k);
        si.y.push_back(fnorm);
        se.x.push_back(static_cast<double>(cum));
        se.y.push_back(fnorm);
        cum += r.evals;
      }
      by_iter.push_back(std::move(si));
      by_eval.push_back(std::move(se));
    }
    SvgSeries ref;
    for (int k = 0; k <= k_max; ++k) {
      ref.x.push_back(k);
      ref.y.push_back(std::ldexp(1.0, -2 * k));
    }
    SvgOptions opt;
    opt.title = "normalized value per iteration (" + std::to_string(cfg.runs) + " runs on " +
                cfg.oracle + "; bold: 2^-2k)";
    opt.x_label = "iteration k";
    opt.y_label = "normalized f";
    write_semilog_svg(cfg.out_dir / "fig1_iters.svg", by_iter, &ref, opt);
    opt.title = "normalized value per oracle evaluation (" + std::to_string(cfg.runs) +
                " runs on " + cfg.oracle + ")";
    opt.x_label = "cumulative oracle evaluations (line search included)";
    write_semilog_svg(cfg.out_dir / "fig1_evals.svg", by_eval, nullptr, opt);
  }

  return result;
}

std::vector<DimSweepRow> norm_convergence_sweep(const std::vector<Index>& dims, int runs_per_dim,
                                                double eps, std::uint64_t seed, int max_iters,
                                                const std::filesystem::path& out_dir) {
  if (runs_per_dim < 1) throw std::invalid_argument("run count must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");

  const LineSearchParams params{};  // mu = 1e-4, nu = 0.9
  std::vector<DimSweepRow> rows;
  if (!out_dir.empty()) fs::create_directories(out_dir);

  for (Index dim : dims) {
    const FunctionOracle oracle = euclid_norm(dim);
    const Matrix h0 = Matrix::Identity(dim, dim);
    const StoppingRule stop{max_iters, eps, std::nullopt, std::nullopt};
    const std::uint64_t dim_stream = derive_seed(seed, static_cast<std::uint64_t>(dim));

    DimSweepRow row;
    row.dim = dim;
    row.runs = runs_per_dim;
    row.eps = eps;
    int reached = 0, nonsmooth_hit = 0, certified = 0;

    std::ofstream runs_os;
    if (!out_dir.empty()) {
      runs_os = open_out(out_dir / ("norm_runs_n" + std::to_string(dim) + ".csv"));
      runs_os << "run,seed,status,iterations,total_evals,final_f,certified\n";
    }

    // Box starts, not unit-sphere ones: with H0 = I and |x0| = 1 the first
    // trial step x0 - x0/|x0| cancels to the origin exactly, hitting the kink.
    SamplingLaw law;
    law.kink_margin = 1e-9;
    for (int i = 0; i < runs_per_dim; ++i) {
      const std::uint64_t run_seed = derive_seed(dim_stream, static_cast<std::uint64_t>(i));
      Rng rng(run_seed);
      const Vector x0 = sample_start(rng, oracle, law);
      Trace trace = run(oracle, x0, h0, params, stop);
      const double final_f = trace.records.back().f;
      const bool ok = certify(oracle, trace, h0, params);
      certified += ok ? 1 : 0;
      if (trace.status == RunStatus::TargetReached) {
        ++reached;
      } else if (trace.status == RunStatus::NonsmoothPoint && final_f <= eps) {
        ++nonsmooth_hit;
      }
      if (runs_os.is_open()) {
        runs_os << i << ',' << run_seed << ',' << to_string(trace.status) << ',' << trace.steps()
                << ',' << trace.total_evals() << ',' << format_double(final_f) << ','
                << (ok ? 1 : 0) << '\n';
      }
    }
    row.fraction_reached = static_cast<double>(reached) / runs_per_dim;
    row.fraction_nonsmooth_hit = static_cast<double>(nonsmooth_hit) / runs_per_dim;
    row.fraction_success = row.fraction_reached + row.fraction_nonsmooth_hit;
    row.certified_fraction = static_cast<double>(certified) / runs_per_dim;
    rows.push_back(row);
  }

  if (!out_dir.empty()) {
    auto os = open_out(out_dir / "norm_sweep.csv");
    os << "dim,runs,eps,fraction_reached,fraction_nonsmooth_hit,fraction_success,"
          "certified_fraction\n";
    for (const DimSweepRow& r : rows) {
      os << r.dim << ',' << r.runs << ',' << format_double(r.eps) << ','
         << format_double(r.fraction_reached) << ',' << format_double(r.fraction_nonsmooth_hit)
         << ',' << format_double(r.fraction_success) << ','
         << format_double(r.certified_fraction) << '\n';
    }
  }
  return rows;
}

}  // namespace bfgslab
