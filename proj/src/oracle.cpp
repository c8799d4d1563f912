#include "edgeworth/oracle.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "edgeworth/hermite.hpp"
#include "edgeworth/rng.hpp"
#include "json.hpp"

namespace edgeworth {

MomentOracle brownian_identity_moments(long n, double T, long paths,
                                       std::uint64_t seed) {
    if (n < 1 || paths < 2) throw std::invalid_argument("invalid oracle arguments");
    const double h = T / static_cast<double>(n);
    const double scale = 0.5 * std::sqrt(static_cast<double>(n)) * h;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0, s6 = 0;
    for (long p = 0; p < paths; ++p) {
        double block = 0.0;
        for (long j = 0; j < n; ++j) {
            const double g = normal_draw(seed, static_cast<std::uint64_t>(p),
                                         static_cast<std::uint64_t>(j));
            block += g * g - 1.0;
        }
        const double z = scale * block;
        const double z2 = z * z;
        s1 += z; s2 += z2; s3 += z2 * z; s4 += z2 * z2; s5 += z2 * z2 * z; s6 += z2 * z2 * z2;
    }
    const double N = static_cast<double>(paths);
    const double m1 = s1 / N, m2 = s2 / N, m3 = s3 / N, m4 = s4 / N,
                 m5 = s5 / N, m6 = s6 / N;
    // Raw-to-central moment conversion.
    const double c2 = m2 - m1 * m1;
    const double c3 = m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1;
    const double c4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * std::pow(m1, 4);
    const double c6 = m6 - 6 * m1 * m5 + 15 * m1 * m1 * m4 -
                      20 * std::pow(m1, 3) * m3 + 15 * std::pow(m1, 4) * m2 -
                      5 * std::pow(m1, 6);
    MomentOracle out;
    out.paths = paths;
    out.mean = m1;
    out.var = c2 * N / (N - 1.0);
    out.third_cumulant = c3;
    out.mean_se = std::sqrt(std::max(0.0, c2) / N);
    out.var_se = std::sqrt(std::max(0.0, c4 - c2 * c2) / N);
    out.k3_se = std::sqrt(
        std::max(0.0, c6 - c3 * c3 - 6.0 * c2 * c4 + 9.0 * c2 * c2 * c2) / N);
    return out;
}

RefinementResult quadrature_refinement(const std::function<double(double)>& integrand,
                                       double horizon, int levels,
                                       long base_steps) {
    if (levels < 3) throw std::invalid_argument("need at least 3 refinement levels");
    RefinementResult out;
    for (int l = 0; l < levels; ++l) {
        const long steps = base_steps << l;
        const double dt = horizon / static_cast<double>(steps);
        double acc = 0.5 * (integrand(0.0) + integrand(horizon));
        for (long k = 1; k < steps; ++k) acc += integrand(dt * static_cast<double>(k));
        out.levels.push_back(acc * dt);
    }
    const std::size_t L = out.levels.size();
    const double d1 = out.levels[L - 3] - out.levels[L - 2];
    const double d2 = out.levels[L - 2] - out.levels[L - 1];
    const double scale = std::max(1e-300, std::abs(out.levels[L - 1]));
    if (std::abs(d2) < 1e-14 * scale) {
        // Exact at every level (e.g. constant integrand).
        out.value = out.levels[L - 1];
        out.ratio = 4.0;
        out.converged = true;
    } else {
        out.ratio = d1 / d2;
        out.value = (4.0 * out.levels[L - 1] - out.levels[L - 2]) / 3.0;
        out.converged = std::abs(out.ratio - 4.0) < 1.0;
    }
    if (!out.converged)
        throw std::runtime_error("quadrature refinement ratio test failed");
    return out;
}

namespace {

long double central_kth_difference(const std::function<long double(long double)>& g,
                                   int k, long double z, long double h) {
    long double acc = 0.0L;
    long double binom = 1.0L;
    for (int i = 0; i <= k; ++i) {
        acc += ((i % 2 == 0) ? 1.0L : -1.0L) * binom * g(z + (0.5L * k - i) * h);
        binom = binom * (k - i) / (i + 1.0L);
    }
    return acc / std::pow(h, static_cast<long double>(k));
}

// Extended precision plus Richardson extrapolation: the k = 5 difference
// quotient loses ~h^-5 bits to cancellation, which double cannot absorb
// at any step small enough for the h^2 truncation term.
long double richardson_kth_derivative(
    const std::function<long double(long double)>& g, int k, long double z,
    long double h) {
    const long double d1 = central_kth_difference(g, k, z, h);
    const long double d2 = central_kth_difference(g, k, z, 2.0L * h);
    return (4.0L * d1 - d2) / 3.0L;
}

}  // namespace

double symbolic_diff_check(int k) {
    double worst = 0.0;
    for (double v : {0.5, 1.0, 2.0}) {
        const VarianceParam vp(v);
        const long double h = 4e-3L * std::sqrt(static_cast<long double>(v));
        const auto kernel = [&](long double x) -> long double {
            return std::exp(-x * x / (2.0L * v)) /
                   std::sqrt(2.0L * static_cast<long double>(M_PI) * v);
        };
        for (double z = -2.0; z <= 2.0; z += 0.25) {
            const double fd = static_cast<double>(
                richardson_kth_derivative(kernel, k, z, h));
            const double got = ((k % 2 == 0) ? 1.0 : -1.0) * fd / gaussian_pdf(z, vp);
            const double want = hermite_h(k, z, vp);
            worst = std::max(worst,
                             std::abs(got - want) / std::max(1.0, std::abs(want)));
        }
    }
    return worst;
}

std::map<std::string, OracleFixture> compute_fixtures() {
    std::map<std::string, OracleFixture> fx;
    auto closed = [&](const std::string& name, double value, double tol) {
        fx[name] = {value, "closed-form", tol};
    };

    closed("gaussian_pdf_z0_v1", 1.0 / std::sqrt(2.0 * M_PI), 1e-15);
    closed("gaussian_pdf_z0_v05", 1.0 / std::sqrt(M_PI), 1e-15);

    // k-fold symbolic differentiation of phi gives the explicit
    // polynomials asserted here; the FD oracle cross-checks them.
    fx["hermite_h1_z1_v1"] = {1.0, "symbolic-differentiation", 1e-12};
    fx["hermite_h3_z1_v1"] = {-2.0, "symbolic-differentiation", 1e-12};
    fx["hermite_h3_z2_v05"] = {40.0, "symbolic-differentiation", 1e-12};

    closed("qn_z1_v05_a3sixth_n4",
           std::exp(-1.0) / std::sqrt(M_PI) * (2.0 / 3.0), 1e-14);

    const double e_quarter = std::exp(-0.25);
    closed("pair_cos_k0_v05", e_quarter, 1e-14);
    closed("pair_cos_shift1_k3_v05", -std::sin(1.0) * e_quarter, 1e-14);
    closed("pair_monomial3_k3", 6.0, 1e-10);
    closed("expansion_cos_shift1_v05_a3sixth_n16",
           std::cos(1.0) * e_quarter +
               0.25 * (1.0 / 6.0) * (-std::sin(1.0) * e_quarter),
           1e-12);

    // exp_pair(0.5, 0, 0.5, 0) on the zero path, T = 1.
    const double a = 0.5, c = 0.5, T = 1.0;
    const double ac = a * c;
    const double dv_slope = (a + c) * ac * ac;  // D-V_t = dv_slope (T - t)
    closed("exp_pair_half_zero_path_v0", 0.5 * ac * ac * T, 1e-14);
    closed("exp_pair_half_zero_path_dv_at0", dv_slope * T, 1e-14);
    closed("exp_pair_half_zero_path_xi0", a * a / 2.0, 1e-14);
    closed("exp_pair_half_zero_path_d1gs0", 2.0 * (a + c) * ac * ac, 1e-14);

    // a5 = (1/8) int_0^T (ac) (dv_slope (T-t))^2 dt, pinned by trapezoid
    // refinement and matching the closed form (1/8)(ac) dv_slope^2 T^3/3.
    const RefinementResult a5 = quadrature_refinement(
        [&](double t) {
            const double dv = dv_slope * (T - t);
            return 0.125 * ac * dv * dv;
        },
        T);
    const double a5_closed = 0.125 * ac * dv_slope * dv_slope * T * T * T / 3.0;
    if (std::abs(a5.value - a5_closed) > 1e-12)
        throw std::runtime_error("a5 refinement disagrees with closed form");
    fx["exp_pair_half_zero_path_a5"] = {a5.value, "quadrature-refinement", 1e-10};

    // Coarse-increment oracle targets for brownian_identity, T = 1.
    closed("brownian_z_mean", 0.0, 0.0);
    closed("brownian_z_var_T1", 0.5, 0.0);
    closed("brownian_z_k3_T1_n16", 0.25, 0.0);
    closed("brownian_v0_T1", 0.5, 1e-12);
    closed("brownian_a3_T1", 1.0 / 6.0, 1e-12);
    closed("clt_predicted_brownian_T1", 1.0 / 3.0, 1e-12);

    // exp_pair(0.25, 0, 0.25, 0): (1/3) int (ac)^4 E[e^{4(a+c)W_t}] dt
    // with E[e^{l W_t}] = e^{l^2 t / 2}.
    {
        const double aa = 0.25, cc = 0.25;
        const double lam = 4.0 * (aa + cc);
        const double acq = aa * cc;
        const double integral = (std::exp(0.5 * lam * lam * T) - 1.0) / (0.5 * lam * lam);
        closed("clt_predicted_exp_pair_quarter_T1",
               std::pow(acq, 4) * integral / 3.0, 1e-14);
    }
    return fx;
}

void write_fixtures(const std::string& path,
                    const std::map<std::string, OracleFixture>& fixtures) {
    nlohmann::ordered_json j;
    for (const auto& [name, fx] : fixtures) {
        j[name] = {{"value", fx.value},
                   {"method", fx.method},
                   {"tolerance", fx.tolerance}};
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open fixtures file: " + path);
    out << j.dump(2) << "\n";
}

std::map<std::string, OracleFixture> read_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixtures file: " + path);
    nlohmann::json j;
    in >> j;
    std::map<std::string, OracleFixture> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        OracleFixture fx;
        fx.value = it.value().at("value").get<double>();
        fx.method = it.value().at("method").get<std::string>();
        fx.tolerance = it.value().at("tolerance").get<double>();
        out[it.key()] = fx;
    }
    return out;
}

}  // namespace edgeworth
