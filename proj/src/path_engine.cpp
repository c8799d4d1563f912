#include "edgeworth/path_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "edgeworth/rng.hpp"

namespace edgeworth {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed,
                                        std::uint64_t stream_id,
                                        std::uint64_t counter) {
    std::uint32_t c0 = static_cast<std::uint32_t>(counter);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream_id);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream_id >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c0, hi0, lo0);
        mulhilo(kPhiloxM1, c2, hi1, lo1);
        const std::uint32_t n0 = hi1 ^ c1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ c3 ^ k1;
        const std::uint32_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return {c0, c1, c2, c3};
}

double uniform_draw(std::uint64_t seed, std::uint64_t stream_id,
                    std::uint64_t counter) {
    const auto r = philox4x32(seed, stream_id, counter);
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

double normal_draw(std::uint64_t seed, std::uint64_t stream_id,
                   std::uint64_t counter) {
    const auto r = philox4x32(seed, stream_id, counter);
    const std::uint64_t bits1 =
        (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
    const std::uint64_t bits2 =
        (static_cast<std::uint64_t>(r[2]) << 32) | r[3];
    const double u1 = (static_cast<double>(bits1 >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(bits2 >> 11) * 0x1.0p-53;          // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

void GridSpec::validate() const {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("grid horizon must be positive and finite");
    if (n < 1) throw std::invalid_argument("coarse step count n must be >= 1");
    if (m < 2) throw std::invalid_argument("fine substep count m must be >= 2");
    if (n > (1L << 26) / m)
        throw std::invalid_argument("grid too large: n*m exceeds 2^26");
}

long auto_fine_substeps(long n) {
    const long r = static_cast<long>(std::ceil(8.0 * std::sqrt(static_cast<double>(n))));
    return std::max(64L, r);
}

PathGrid sample_path(std::uint64_t seed, std::uint64_t stream_id,
                     const GridSpec& spec, bool antithetic) {
    spec.validate();
    const long steps = spec.fine_steps();
    const double sd = std::sqrt(spec.fine_dt());
    PathGrid path;
    path.spec = spec;
    path.stream_id = stream_id;
    path.antithetic = antithetic;
    path.w.resize(steps + 1);
    path.w[0] = 0.0;
    const double sign = antithetic ? -1.0 : 1.0;
    double acc = 0.0;
    for (long k = 0; k < steps; ++k) {
        acc += sign * sd * normal_draw(seed, stream_id, static_cast<std::uint64_t>(k));
        path.w[k + 1] = acc;
    }
    return path;
}

CoefficientTrajectory coefficient_trajectory(const GModel& model,
                                             const PathGrid& path) {
    const long count = static_cast<long>(path.w.size());
    const double dt = path.spec.fine_dt();
    CoefficientTrajectory traj;
    traj.spec = path.spec;
    for (auto* v : {&traj.xi, &traj.theta, &traj.gamma, &traj.sigma,
                    &traj.d_plus_theta, &traj.d_plus_sigma, &traj.d1_gs,
                    &traj.d2_gs, &traj.x, &traj.y})
        v->resize(count);
    for (long k = 0; k < count; ++k) {
        const double t = dt * static_cast<double>(k);
        CoefficientPoint p;
        try {
            p = eval_coefficients(model, t, path.w[k]);
        } catch (const ModelEvalError& e) {
            throw ModelEvalError(std::string(e.what()) + " (stream " +
                                 std::to_string(path.stream_id) + ")");
        }
        traj.xi[k] = p.xi;
        traj.theta[k] = p.theta;
        traj.gamma[k] = p.gamma;
        traj.sigma[k] = p.sigma;
        traj.d_plus_theta[k] = p.d_plus_theta;
        traj.d_plus_sigma[k] = p.d_plus_sigma;
        traj.d1_gs[k] = p.d1_gs;
        traj.d2_gs[k] = p.d2_gs;
        traj.x[k] = p.x_val;
        traj.y[k] = p.y_val;
    }
    return traj;
}

namespace {

ErrorSample error_from_arrays(const std::vector<double>& x,
                              const std::vector<double>& y,
                              const std::vector<double>& sigma,
                              const GridSpec& spec, std::uint64_t stream_id) {
    const long steps = spec.fine_steps();
    const long m = spec.m;
    const double dt = spec.fine_dt();
    const double sqrt_n = std::sqrt(static_cast<double>(spec.n));
    double z = 0.0;
    double v0n = 0.0;
    for (long k = 0; k < steps; ++k) {
        const long coarse_idx = (k / m) * m;
        const double dx = x[k] - x[coarse_idx];
        z += dx * (y[k + 1] - y[k]);
        const double s = sigma[k];
        v0n += dx * dx * s * s;
    }
    ErrorSample sample;
    sample.z = sqrt_n * z;
    sample.v0n = static_cast<double>(spec.n) * v0n * dt;
    sample.stream_id = stream_id;
    if (!std::isfinite(sample.z) || !std::isfinite(sample.v0n))
        throw ModelEvalError("non-finite error sample (stream " +
                             std::to_string(stream_id) + ")");
    return sample;
}

}  // namespace

ErrorSample discretization_error(const GModel& model, const PathGrid& path) {
    const long count = static_cast<long>(path.w.size());
    const double dt = path.spec.fine_dt();
    std::vector<double> x(count), y(count), sigma(count);
    for (long k = 0; k < count; ++k) {
        const double t = dt * static_cast<double>(k);
        x[k] = model.eval_x(t, path.w[k]).val;
        const Jet gy = model.eval_y(t, path.w[k]);
        y[k] = gy.val;
        sigma[k] = gy.dw;
    }
    return error_from_arrays(x, y, sigma, path.spec, path.stream_id);
}

ErrorSample discretization_error(const CoefficientTrajectory& traj,
                                 const PathGrid& path) {
    return error_from_arrays(traj.x, traj.y, traj.sigma, path.spec,
                             path.stream_id);
}

}  // namespace edgeworth
