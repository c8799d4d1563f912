#pragma once

#include <cstdint>
#include <vector>

#include "edgeworth/path_engine.hpp"

namespace edgeworth {

class DegenerateModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// V_0 = 1/2 int_0^T Gamma^2 Sigma^2 dt and the suffix integrals
/// D-V_t = 1/2 int_t^T d_w(Gamma^2 Sigma^2) ds,
/// (D-)^2 V_t = 1/2 int_t^T d_ww(Gamma^2 Sigma^2) ds,
/// all by trapezoid quadrature on the fine grid in one reverse pass.
struct MalliavinTrajectory {
    double v0 = 0.0;
    std::vector<double> dminus_v;
    std::vector<double> dminus2_v;
};

MalliavinTrajectory dv_trajectories(const CoefficientTrajectory& traj);

/// Per-path expansion coefficients of the first-order Edgeworth density.
struct ExpansionSample {
    double v0 = 0.0;
    double a1 = 0.0;
    double a3 = 0.0;
    double a5 = 0.0;
    std::uint64_t stream_id = 0;
};

/// A1 = 1/2 int (Xi Theta + D+Theta Gamma) dt
/// A3 = 1/4 int ((Xi Sigma + Theta Gamma + D+Sigma Gamma) D-V
///              + Gamma Sigma (D-)^2 V) dt + 1/6 int Sigma^3 Gamma^3 dt
/// A5 = 1/8 int Gamma Sigma |D-V|^2 dt
ExpansionSample expansion_coefficients(const CoefficientTrajectory& traj,
                                       const MalliavinTrajectory& mal,
                                       std::uint64_t stream_id = 0);

/// Test-only: checks D+Theta and D+Sigma against finite differences of
/// Theta and Sigma in w along the path.
struct DplusConsistencyReport {
    double max_err_theta = 0.0;
    double max_err_sigma = 0.0;
};
DplusConsistencyReport dplus_consistency_check(const GModel& model,
                                               const PathGrid& path,
                                               double step = 1e-5);

}  // namespace edgeworth
