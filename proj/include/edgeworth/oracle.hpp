#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace edgeworth {

/// Independent brute-force oracles pinning the expected values the test
/// suite asserts against the main implementation path.

/// Sample cumulants of Z^n_T for X = Y = W, simulated exactly from
/// coarse increments via the per-block closed form (1/2)((dW)^2 - dt).
/// No fine grid is involved; analytic targets are mean 0, var T/2,
/// kappa3 = T / sqrt(n).
struct MomentOracle {
    double mean = 0.0, var = 0.0, third_cumulant = 0.0;
    double mean_se = 0.0, var_se = 0.0, k3_se = 0.0;
    long paths = 0;
};
MomentOracle brownian_identity_moments(long n, double T, long paths,
                                       std::uint64_t seed);

/// Trapezoid refinement of a time integral on [0, T] at doubling
/// resolutions, with a Richardson-extrapolated value and the observed
/// convergence ratio (4 for the trapezoid rule on smooth integrands).
struct RefinementResult {
    double value = 0.0;        // Richardson extrapolation of the finest pair
    double ratio = 0.0;        // error-contraction ratio across the last levels
    bool converged = false;
    std::vector<double> levels;
};
RefinementResult quadrature_refinement(const std::function<double(double)>& integrand,
                                       double horizon, int levels = 6,
                                       long base_steps = 16);

/// Max relative deviation of hermite_h(k, ., .) from the k-fold central
/// finite difference of the Gaussian kernel over a (z, v) grid.
double symbolic_diff_check(int k);

/// Pinned reference values, each recomputed by its oracle.
struct OracleFixture {
    double value = 0.0;
    std::string method;  // closed-form | quadrature-refinement |
                         // coarse-increment simulation | symbolic-differentiation
    double tolerance = 0.0;
};

std::map<std::string, OracleFixture> compute_fixtures();
void write_fixtures(const std::string& path,
                    const std::map<std::string, OracleFixture>& fixtures);
std::map<std::string, OracleFixture> read_fixtures(const std::string& path);

}  // namespace edgeworth
