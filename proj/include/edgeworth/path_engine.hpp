#pragma once

#include <cstdint>
#include <vector>

#include "edgeworth/model.hpp"

namespace edgeworth {

/// Two-level uniform grid on [0, horizon]: n coarse steps, m fine
/// substeps per coarse step.
struct GridSpec {
    double horizon = 1.0;
    long n = 1;
    long m = 2;

    void validate() const;
    long fine_steps() const { return n * m; }
    double fine_dt() const { return horizon / static_cast<double>(n * m); }
    double coarse_dt() const { return horizon / static_cast<double>(n); }
};

/// Default fine refinement: max(64, ceil(8 sqrt(n))), so the fine-grid
/// quadrature bias stays well under the n^{-1/2} correction.
long auto_fine_substeps(long n);

/// Brownian path W sampled at all fine nodes; w[0] = 0, coarse points
/// are the indices that are multiples of m.
struct PathGrid {
    GridSpec spec;
    std::vector<double> w;
    std::uint64_t stream_id = 0;
    bool antithetic = false;
};

PathGrid sample_path(std::uint64_t seed, std::uint64_t stream_id,
                     const GridSpec& spec, bool antithetic = false);

/// Coefficient processes evaluated at every fine node.
struct CoefficientTrajectory {
    GridSpec spec;
    std::vector<double> xi, theta, gamma, sigma;
    std::vector<double> d_plus_theta, d_plus_sigma;
    std::vector<double> d1_gs, d2_gs;
    std::vector<double> x, y;
};

CoefficientTrajectory coefficient_trajectory(const GModel& model,
                                             const PathGrid& path);

/// One draw of the normalized discretization error and of the discrete
/// variance functional.
struct ErrorSample {
    double z = 0.0;
    double v0n = 0.0;
    std::uint64_t stream_id = 0;
};

/// z = sqrt(n) sum_k (X_k - X^n_k)(Y_{k+1} - Y_k) over fine left-endpoint
/// Ito sums; v0n = n sum_k (X_k - X^n_k)^2 Sigma_k^2 dt (left-point
/// quadrature, consistent with the Ito sums).
ErrorSample discretization_error(const GModel& model, const PathGrid& path);
ErrorSample discretization_error(const CoefficientTrajectory& traj,
                                 const PathGrid& path);

}  // namespace edgeworth
