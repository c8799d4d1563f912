#include "edgeworth/hermite.hpp"

#include <cmath>

namespace edgeworth {

VarianceParam::VarianceParam(double v) : v_(v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite input: variance");
    if (v <= 0.0) throw std::invalid_argument("variance must be strictly positive");
}

double gaussian_pdf(double z, VarianceParam v) {
    if (!std::isfinite(z)) throw std::invalid_argument("non-finite input: z");
    const double var = v.value();
    return std::exp(-z * z / (2.0 * var)) / std::sqrt(2.0 * M_PI * var);
}

double hermite_h(int k, double z, VarianceParam v) {
    if (k < 0 || k > kMaxHermiteOrder)
        throw std::invalid_argument("unsupported Hermite order (k must be in [0, 8])");
    if (!std::isfinite(z)) throw std::invalid_argument("non-finite input: z");
    const double inv_v = 1.0 / v.value();
    double h_prev = 1.0;          // H_0
    if (k == 0) return h_prev;
    double h = z * inv_v;         // H_1
    for (int j = 1; j < k; ++j) {
        const double h_next = z * inv_v * h - static_cast<double>(j) * inv_v * h_prev;
        h_prev = h;
        h = h_next;
    }
    return h;
}

double qn_density(double z, VarianceParam v0, double a1, double a3, double a5,
                  long n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const double corr = (a1 * hermite_h(1, z, v0) + a3 * hermite_h(3, z, v0) +
                         a5 * hermite_h(5, z, v0)) /
                        std::sqrt(static_cast<double>(n));
    return (1.0 + corr) * gaussian_pdf(z, v0);
}

}  // namespace edgeworth
