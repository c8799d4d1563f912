#pragma once

#include <functional>
#include <vector>

namespace edgeworth {

/// Nodes and weights of the N-point Gauss-Hermite rule for the weight
/// exp(-x^2) on the real line (physicists' convention; weights sum to
/// sqrt(pi)).
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule lookup; thread-safe.
const GaussHermiteRule& gauss_hermite_rule(int n);

/// E[g(Z)] for Z ~ N(0, variance), via the substitution z = sqrt(2v) x.
double gaussian_expectation(const std::function<double(double)>& g,
                            double variance, int nodes = 64);

}  // namespace edgeworth
