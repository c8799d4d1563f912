#include "edgeworth/pairing.hpp"

#include <cmath>

#include "edgeworth/gauss_hermite.hpp"

namespace edgeworth {

namespace {

// E[cos(a Z + theta)] = exp(-a^2 v / 2) cos(theta) for Z ~ N(0, v).
double char_fn_cos(double a, double theta, double v) {
    return std::exp(-0.5 * a * a * v) * std::cos(theta);
}

}  // namespace

PairIntegral pair_integral_ex(const TestFunction& f, int k, VarianceParam v,
                              int quad_nodes) {
    if (k < 0 || k > kMaxDerivativeOrder)
        throw std::invalid_argument("pairing order k must be in [0, 5]");
    PairIntegral out;
    const double var = v.value();
    switch (f.kind()) {
        case TestFunction::Kind::CosShifted: {
            const double a = f.param_a();
            // f^(k)(z) = a^k cos(a(z - c) + k pi/2)
            out.value = std::pow(a, k) *
                        char_fn_cos(a, 0.5 * M_PI * k - a * f.param_c(), var);
            return out;
        }
        case TestFunction::Kind::SinScaled: {
            const double a = f.param_a();
            // f^(k)(z) = a^k sin(a z + k pi/2) = a^k cos(a z + k pi/2 - pi/2)
            out.value = std::pow(a, k) *
                        char_fn_cos(a, 0.5 * M_PI * (k - 1), var);
            return out;
        }
        case TestFunction::Kind::Monomial:
            if (f.monomial_degree() < k) {
                out.monomial_underflow = true;
                return out;
            }
            break;
        default:
            break;
    }
    out.value = gaussian_expectation(
        [&](double z) { return f.derivative(k, z); }, var, quad_nodes);
    return out;
}

double pair_integral(const TestFunction& f, int k, VarianceParam v,
                     int quad_nodes) {
    return pair_integral_ex(f, k, v, quad_nodes).value;
}

double pair_integral_shifted(const TestFunction& f, int k, VarianceParam v,
                             double x, int quad_nodes) {
    if (k < 0 || k > kMaxDerivativeOrder)
        throw std::invalid_argument("pairing order k must be in [0, 5]");
    if (f.kind() == TestFunction::Kind::Monomial && f.monomial_degree() < k)
        return 0.0;
    return gaussian_expectation(
        [&](double z) { return f.derivative(k, x + z); }, v.value(), quad_nodes);
}

double expansion_value(const TestFunction& f, double v0, double a1, double a3,
                       double a5, long n, int quad_nodes) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const VarianceParam v(v0);
    const double base = pair_integral(f, 0, v, quad_nodes);
    const double corr = a1 * pair_integral(f, 1, v, quad_nodes) +
                        a3 * pair_integral(f, 3, v, quad_nodes) +
                        a5 * pair_integral(f, 5, v, quad_nodes);
    return base + corr / std::sqrt(static_cast<double>(n));
}

}  // namespace edgeworth
