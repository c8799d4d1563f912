#include "edgeworth/gauss_hermite.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace edgeworth {

namespace {

// Newton iteration on the orthonormal Hermite recurrence, with the usual
// asymptotic initial guesses for the largest roots.
GaussHermiteRule compute_rule(int n) {
    constexpr double kEps = 1e-14;
    constexpr int kMaxIter = 64;
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}

    GaussHermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0;; ++iter) {
            if (iter >= kMaxIter)
                throw std::runtime_error("Gauss-Hermite Newton iteration failed to converge");
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= kEps) break;
        }
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    if (n % 2 == 1) rule.nodes[half - 1] = 0.0;
    return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(int n) {
    if (n < 1 || n > 512) throw std::invalid_argument("Gauss-Hermite node count must be in [1, 512]");
    static std::mutex mu;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double gaussian_expectation(const std::function<double(double)>& g,
                            double variance, int nodes) {
    if (!(variance > 0.0)) throw std::invalid_argument("variance must be strictly positive");
    const GaussHermiteRule& rule = gauss_hermite_rule(nodes);
    const double scale = std::sqrt(2.0 * variance);
    double acc = 0.0;
    for (int i = 0; i < nodes; ++i) acc += rule.weights[i] * g(scale * rule.nodes[i]);
    return acc / std::sqrt(M_PI);
}

}  // namespace edgeworth
