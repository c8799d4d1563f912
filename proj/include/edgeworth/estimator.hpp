#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgeworth/malliavin.hpp"
#include "edgeworth/path_engine.hpp"
#include "edgeworth/test_function.hpp"

namespace edgeworth {

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long n_paths = 0;
    double ci95_lo() const { return mean - 1.96 * stderr_; }
    double ci95_hi() const { return mean + 1.96 * stderr_; }
};

struct EstimatorOptions {
    long paths = 1000;
    std::uint64_t seed = 0;
    int threads = 0;  // 0: EDGEWORTH_THREADS env var, else hardware count
    bool antithetic = false;
    int quad_nodes = 64;
};

int resolve_threads(int requested);

/// Monte Carlo estimate of E[f(Z^n_T)] over streams 0..paths-1.
McEstimate estimate_error_expectation(const GModel& model,
                                      const TestFunction& f,
                                      const GridSpec& spec,
                                      const EstimatorOptions& opts);

/// Monte Carlo estimate of the first-order expansion value
/// int f(z) E[Q_n(z)] dz. With independent_streams the expansion samples
/// use streams paths..2*paths-1 instead of the coupled range.
McEstimate estimate_expansion(const GModel& model, const TestFunction& f,
                              const GridSpec& spec,
                              const EstimatorOptions& opts,
                              bool independent_streams = false);

/// Stable-CLT check: empirical Var(sqrt(n)(V0^n - V0)) against
/// (1/3) E[int Gamma^4 Sigma^4 dt] estimated on the same paths.
struct CltCheck {
    double empirical_var = 0.0;
    double empirical_stderr = 0.0;
    double predicted = 0.0;
    long n_paths = 0;
};
CltCheck clt_variance_check(const GModel& model, const GridSpec& spec,
                            const EstimatorOptions& opts);

struct ReportRow {
    long n = 0;
    long m = 0;
    long paths = 0;
    McEstimate mc;
    McEstimate zeroth_order;
    McEstimate expansion;
    double a1_mean = 0.0;
    double a3_mean = 0.0;
    double a5_mean = 0.0;
    double v0_mean = 0.0;
    double scaled_residual = 0.0;
    double scaled_residual_stderr = 0.0;
};

struct ExperimentReport {
    std::string model_name;
    std::string f_name;
    double horizon = 0.0;
    std::string mode;  // "coupled" | "independent"
    std::vector<ReportRow> rows;
};

/// One row per n. m < 0 selects the auto rule per n. Coupled mode drives
/// both sides with the same streams; the residual column is then the
/// per-path difference with its own (much smaller) standard error.
ExperimentReport convergence_study(const GModel& model, const TestFunction& f,
                                   const std::vector<long>& n_list, double horizon,
                                   long m, const EstimatorOptions& opts,
                                   bool coupled = true);

namespace detail {

/// Deterministic parallel reduction over streams [first, first+count):
/// fixed 1024-stream blocks accumulated sequentially, then a pairwise
/// tree merge in block order. Output is bit-identical for any thread
/// count.
struct MomentSums {
    std::vector<double> sum;
    std::vector<double> sumsq;
    long count = 0;
};

/// worker_factory() is called once per thread and returns the per-stream
/// evaluator (which may own scratch buffers).
using PathEval = std::function<void(std::uint64_t stream, double* out)>;
MomentSums reduce_streams(std::uint64_t first_stream, long count, int n_obs,
                          int threads,
                          const std::function<PathEval()>& worker_factory);

McEstimate to_estimate(const MomentSums& s, int idx);

}  // namespace detail

}  // namespace edgeworth
