#include "edgeworth/malliavin.hpp"

#include <cmath>

namespace edgeworth {

namespace {

// Trapezoid over the whole fine grid.
double trapezoid(const std::vector<double>& f, double dt) {
    const std::size_t count = f.size();
    double acc = 0.5 * (f.front() + f.back());
    for (std::size_t k = 1; k + 1 < count; ++k) acc += f[k];
    return acc * dt;
}

}  // namespace

MalliavinTrajectory dv_trajectories(const CoefficientTrajectory& traj) {
    const std::size_t count = traj.gamma.size();
    const double dt = traj.spec.fine_dt();
    MalliavinTrajectory mal;
    mal.dminus_v.assign(count, 0.0);
    mal.dminus2_v.assign(count, 0.0);
    // Suffix trapezoid accumulation, halved integrands.
    for (std::size_t k = count - 1; k-- > 0;) {
        mal.dminus_v[k] = mal.dminus_v[k + 1] +
                          0.25 * dt * (traj.d1_gs[k] + traj.d1_gs[k + 1]);
        mal.dminus2_v[k] = mal.dminus2_v[k + 1] +
                           0.25 * dt * (traj.d2_gs[k] + traj.d2_gs[k + 1]);
    }
    double v0 = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double gs = traj.gamma[k] * traj.sigma[k];
        const double integrand = gs * gs;
        v0 += (k == 0 || k + 1 == count) ? 0.5 * integrand : integrand;
    }
    mal.v0 = 0.5 * v0 * dt;
    return mal;
}

ExpansionSample expansion_coefficients(const CoefficientTrajectory& traj,
                                       const MalliavinTrajectory& mal,
                                       std::uint64_t stream_id) {
    const std::size_t count = traj.gamma.size();
    const double dt = traj.spec.fine_dt();
    if (!(mal.v0 > 0.0))
        throw DegenerateModelError(
            "degenerate model: limit variance V0 is zero (expansion density undefined)");
    double i1 = 0.0, i3_mixed = 0.0, i3_cubed = 0.0, i5 = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double w = (k == 0 || k + 1 == count) ? 0.5 : 1.0;
        const double gamma = traj.gamma[k], sigma = traj.sigma[k];
        const double dv = mal.dminus_v[k];
        i1 += w * (traj.xi[k] * traj.theta[k] + traj.d_plus_theta[k] * gamma);
        i3_mixed += w * ((traj.xi[k] * sigma + traj.theta[k] * gamma +
                          traj.d_plus_sigma[k] * gamma) * dv +
                         gamma * sigma * mal.dminus2_v[k]);
        const double gs = gamma * sigma;
        i3_cubed += w * gs * gs * gs;
        i5 += w * gs * dv * dv;
    }
    ExpansionSample s;
    s.v0 = mal.v0;
    s.a1 = 0.5 * i1 * dt;
    s.a3 = 0.25 * i3_mixed * dt + i3_cubed * dt / 6.0;
    s.a5 = 0.125 * i5 * dt;
    s.stream_id = stream_id;
    if (!std::isfinite(s.a1) || !std::isfinite(s.a3) || !std::isfinite(s.a5))
        throw ModelEvalError("non-finite expansion coefficients (stream " +
                             std::to_string(stream_id) + ")");
    return s;
}

DplusConsistencyReport dplus_consistency_check(const GModel& model,
                                               const PathGrid& path,
                                               double step) {
    DplusConsistencyReport rep;
    const double dt = path.spec.fine_dt();
    for (std::size_t k = 0; k < path.w.size(); ++k) {
        const double t = dt * static_cast<double>(k);
        const double w = path.w[k];
        const CoefficientPoint mid = eval_coefficients(model, t, w);
        const CoefficientPoint up = eval_coefficients(model, t, w + step);
        const CoefficientPoint dn = eval_coefficients(model, t, w - step);
        const double fd_theta = (up.theta - dn.theta) / (2.0 * step);
        const double fd_sigma = (up.sigma - dn.sigma) / (2.0 * step);
        const double scale_t = std::max(1.0, std::abs(mid.d_plus_theta));
        const double scale_s = std::max(1.0, std::abs(mid.d_plus_sigma));
        rep.max_err_theta = std::max(
            rep.max_err_theta, std::abs(fd_theta - mid.d_plus_theta) / scale_t);
        rep.max_err_sigma = std::max(
            rep.max_err_sigma, std::abs(fd_sigma - mid.d_plus_sigma) / scale_s);
    }
    return rep;
}

}  // namespace edgeworth
