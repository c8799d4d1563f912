#include "edgeworth/estimator.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "edgeworth/pairing.hpp"

namespace edgeworth {

namespace detail {

namespace {
constexpr long kBlockStreams = 1024;
}

MomentSums reduce_streams(std::uint64_t first_stream, long count, int n_obs,
                          int threads,
                          const std::function<PathEval()>& worker_factory) {
    if (count < 1) throw std::invalid_argument("stream count must be >= 1");
    const long n_blocks = (count + kBlockStreams - 1) / kBlockStreams;
    std::vector<MomentSums> blocks(n_blocks);
    for (auto& b : blocks) {
        b.sum.assign(n_obs, 0.0);
        b.sumsq.assign(n_obs, 0.0);
    }

    std::atomic<long> next_block{0};
    std::mutex err_mu;
    std::exception_ptr first_error;

    auto run_worker = [&]() {
        PathEval eval = worker_factory();
        std::vector<double> obs(n_obs);
        try {
            for (;;) {
                const long b = next_block.fetch_add(1);
                if (b >= n_blocks) break;
                MomentSums& blk = blocks[b];
                const long lo = b * kBlockStreams;
                const long hi = std::min(count, lo + kBlockStreams);
                for (long i = lo; i < hi; ++i) {
                    eval(first_stream + static_cast<std::uint64_t>(i), obs.data());
                    for (int j = 0; j < n_obs; ++j) {
                        blk.sum[j] += obs[j];
                        blk.sumsq[j] += obs[j] * obs[j];
                    }
                    ++blk.count;
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!first_error) first_error = std::current_exception();
        }
    };

    const int n_threads =
        static_cast<int>(std::max<long>(1, std::min<long>(threads, n_blocks)));
    if (n_threads == 1) {
        run_worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(run_worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // Pairwise tree merge in fixed block order.
    std::vector<MomentSums> level = std::move(blocks);
    while (level.size() > 1) {
        std::vector<MomentSums> next((level.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            MomentSums merged = std::move(level[2 * i]);
            if (2 * i + 1 < level.size()) {
                const MomentSums& rhs = level[2 * i + 1];
                for (int j = 0; j < n_obs; ++j) {
                    merged.sum[j] += rhs.sum[j];
                    merged.sumsq[j] += rhs.sumsq[j];
                }
                merged.count += rhs.count;
            }
            next[i] = std::move(merged);
        }
        level = std::move(next);
    }
    return level.front();
}

McEstimate to_estimate(const MomentSums& s, int idx) {
    McEstimate e;
    e.n_paths = s.count;
    const double n = static_cast<double>(s.count);
    e.mean = s.sum[idx] / n;
    if (s.count > 1) {
        const double var =
            std::max(0.0, (s.sumsq[idx] - s.sum[idx] * s.sum[idx] / n) / (n - 1.0));
        e.stderr_ = std::sqrt(var / n);
    }
    return e;
}

}  // namespace detail

int resolve_threads(int requested) {
    if (requested < 0) throw std::invalid_argument("thread count must be >= 0");
    if (requested > 0) return requested;
    if (const char* env = std::getenv("EDGEWORTH_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// Per-path quantities shared by the estimators.
struct PathSample {
    double z = 0.0;
    double v0n = 0.0;
    ExpansionSample exp;
    double gs4_integral = 0.0;  // int Gamma^4 Sigma^4 dt (trapezoid)
};

PathSample evaluate_path(const GModel& model, const GridSpec& spec,
                         std::uint64_t seed, std::uint64_t stream,
                         bool antithetic) {
    const PathGrid path = sample_path(seed, stream, spec, antithetic);
    const CoefficientTrajectory traj = coefficient_trajectory(model, path);
    PathSample s;
    const ErrorSample err = discretization_error(traj, path);
    s.z = err.z;
    s.v0n = err.v0n;
    const MalliavinTrajectory mal = dv_trajectories(traj);
    s.exp = expansion_coefficients(traj, mal, stream);
    const std::size_t count = traj.gamma.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double gs = traj.gamma[k] * traj.sigma[k];
        const double integrand = gs * gs * gs * gs;
        acc += (k == 0 || k + 1 == count) ? 0.5 * integrand : integrand;
    }
    s.gs4_integral = acc * spec.fine_dt();
    return s;
}

}  // namespace

McEstimate estimate_error_expectation(const GModel& model,
                                      const TestFunction& f,
                                      const GridSpec& spec,
                                      const EstimatorOptions& opts) {
    if (opts.paths < 2) throw std::invalid_argument("paths must be >= 2");
    spec.validate();
    const bool anti = opts.antithetic;
    auto factory = [&]() -> detail::PathEval {
        return [&, anti](std::uint64_t stream, double* out) {
            const PathGrid path = sample_path(opts.seed, stream, spec, false);
            double val = f(discretization_error(model, path).z);
            if (anti) {
                const PathGrid apath = sample_path(opts.seed, stream, spec, true);
                val = 0.5 * (val + f(discretization_error(model, apath).z));
            }
            out[0] = val;
        };
    };
    const auto sums = detail::reduce_streams(0, opts.paths, 1,
                                             resolve_threads(opts.threads), factory);
    return detail::to_estimate(sums, 0);
}

McEstimate estimate_expansion(const GModel& model, const TestFunction& f,
                              const GridSpec& spec,
                              const EstimatorOptions& opts,
                              bool independent_streams) {
    if (opts.paths < 2) throw std::invalid_argument("paths must be >= 2");
    spec.validate();
    const std::uint64_t first =
        independent_streams ? static_cast<std::uint64_t>(opts.paths) : 0;
    auto factory = [&]() -> detail::PathEval {
        return [&](std::uint64_t stream, double* out) {
            const PathSample ps = evaluate_path(model, spec, opts.seed, stream, false);
            double val = expansion_value(f, ps.exp.v0, ps.exp.a1, ps.exp.a3,
                                         ps.exp.a5, spec.n, opts.quad_nodes);
            if (opts.antithetic) {
                const PathSample aps =
                    evaluate_path(model, spec, opts.seed, stream, true);
                val = 0.5 * (val + expansion_value(f, aps.exp.v0, aps.exp.a1,
                                                   aps.exp.a3, aps.exp.a5,
                                                   spec.n, opts.quad_nodes));
            }
            out[0] = val;
        };
    };
    const auto sums = detail::reduce_streams(first, opts.paths, 1,
                                             resolve_threads(opts.threads), factory);
    return detail::to_estimate(sums, 0);
}

CltCheck clt_variance_check(const GModel& model, const GridSpec& spec,
                            const EstimatorOptions& opts) {
    if (opts.paths < 2) throw std::invalid_argument("paths must be >= 2");
    spec.validate();
    const double sqrt_n = std::sqrt(static_cast<double>(spec.n));
    auto factory = [&]() -> detail::PathEval {
        return [&, sqrt_n](std::uint64_t stream, double* out) {
            const PathSample ps = evaluate_path(model, spec, opts.seed, stream, false);
            const double x = sqrt_n * (ps.v0n - ps.exp.v0);
            out[0] = x;
            out[1] = x * x;
            out[2] = ps.gs4_integral;
        };
    };
    const auto sums = detail::reduce_streams(0, opts.paths, 3,
                                             resolve_threads(opts.threads), factory);
    CltCheck check;
    check.n_paths = sums.count;
    const double n = static_cast<double>(sums.count);
    const double mean_x = sums.sum[0] / n;
    const double var =
        std::max(0.0, (sums.sumsq[0] - sums.sum[0] * sums.sum[0] / n) / (n - 1.0));
    check.empirical_var = var;
    // Variance of the sample variance from the raw fourth moment; the
    // mean of x is O(1/m) so the raw/central distinction is negligible.
    const double m4 = sums.sumsq[1] / n;
    check.empirical_stderr =
        std::sqrt(std::max(0.0, m4 - var * var) / n);
    check.predicted = sums.sum[2] / (3.0 * n);
    (void)mean_x;
    return check;
}

ExperimentReport convergence_study(const GModel& model, const TestFunction& f,
                                   const std::vector<long>& n_list, double horizon,
                                   long m, const EstimatorOptions& opts,
                                   bool coupled) {
    if (n_list.empty()) throw std::invalid_argument("n_list must be non-empty");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("n_list must be strictly ascending");

    ExperimentReport report;
    report.model_name = model.name();
    report.f_name = f.name();
    report.horizon = horizon;
    report.mode = coupled ? "coupled" : "independent";

    const int threads = resolve_threads(opts.threads);

    for (long n : n_list) {
        GridSpec spec{horizon, n, m < 0 ? auto_fine_substeps(n) : m};
        spec.validate();
        ReportRow row;
        row.n = n;
        row.m = spec.m;
        row.paths = opts.paths;
        const double sqrt_n = std::sqrt(static_cast<double>(n));

        if (coupled) {
            // Observables: f(z), zeroth, expansion, a1, a3, a5, v0, residual.
            auto factory = [&]() -> detail::PathEval {
                return [&, spec](std::uint64_t stream, double* out) {
                    auto one = [&](bool anti, double* o) {
                        const PathSample ps =
                            evaluate_path(model, spec, opts.seed, stream, anti);
                        const double fz = f(ps.z);
                        const double zeroth = pair_integral(
                            f, 0, VarianceParam(ps.exp.v0), opts.quad_nodes);
                        const double expv = expansion_value(
                            f, ps.exp.v0, ps.exp.a1, ps.exp.a3, ps.exp.a5,
                            spec.n, opts.quad_nodes);
                        o[0] = fz;
                        o[1] = zeroth;
                        o[2] = expv;
                        o[3] = ps.exp.a1;
                        o[4] = ps.exp.a3;
                        o[5] = ps.exp.a5;
                        o[6] = ps.exp.v0;
                        o[7] = fz - expv;
                    };
                    one(false, out);
                    if (opts.antithetic) {
                        double alt[8];
                        one(true, alt);
                        for (int j = 0; j < 8; ++j) out[j] = 0.5 * (out[j] + alt[j]);
                    }
                };
            };
            const auto sums =
                detail::reduce_streams(0, opts.paths, 8, threads, factory);
            row.mc = detail::to_estimate(sums, 0);
            row.zeroth_order = detail::to_estimate(sums, 1);
            row.expansion = detail::to_estimate(sums, 2);
            row.a1_mean = sums.sum[3] / sums.count;
            row.a3_mean = sums.sum[4] / sums.count;
            row.a5_mean = sums.sum[5] / sums.count;
            row.v0_mean = sums.sum[6] / sums.count;
            const McEstimate resid = detail::to_estimate(sums, 7);
            row.scaled_residual = sqrt_n * resid.mean;
            row.scaled_residual_stderr = sqrt_n * resid.stderr_;
        } else {
            EstimatorOptions local = opts;
            local.threads = threads;
            row.mc = estimate_error_expectation(model, f, spec, local);
            // Independent streams for the expansion side plus the
            // per-path coefficient summaries.
            auto factory = [&]() -> detail::PathEval {
                return [&, spec](std::uint64_t stream, double* out) {
                    const PathSample ps =
                        evaluate_path(model, spec, opts.seed, stream, false);
                    out[0] = pair_integral(f, 0, VarianceParam(ps.exp.v0),
                                           opts.quad_nodes);
                    out[1] = expansion_value(f, ps.exp.v0, ps.exp.a1, ps.exp.a3,
                                             ps.exp.a5, spec.n, opts.quad_nodes);
                    out[2] = ps.exp.a1;
                    out[3] = ps.exp.a3;
                    out[4] = ps.exp.a5;
                    out[5] = ps.exp.v0;
                };
            };
            const auto sums = detail::reduce_streams(
                static_cast<std::uint64_t>(opts.paths), opts.paths, 6, threads,
                factory);
            row.zeroth_order = detail::to_estimate(sums, 0);
            row.expansion = detail::to_estimate(sums, 1);
            row.a1_mean = sums.sum[2] / sums.count;
            row.a3_mean = sums.sum[3] / sums.count;
            row.a5_mean = sums.sum[4] / sums.count;
            row.v0_mean = sums.sum[5] / sums.count;
            row.scaled_residual = sqrt_n * (row.mc.mean - row.expansion.mean);
            row.scaled_residual_stderr =
                sqrt_n * std::hypot(row.mc.stderr_, row.expansion.stderr_);
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace edgeworth
