#pragma once

#include "edgeworth/hermite.hpp"
#include "edgeworth/test_function.hpp"

namespace edgeworth {

struct PairIntegral {
    double value = 0.0;
    /// Set when f is a monomial of degree < k (the k-th derivative
    /// vanishes identically); the value is exactly 0.
    bool monomial_underflow = false;
};

/// int f(z) H_k(z, v) phi(z, v) dz, evaluated through the
/// integration-by-parts identity = E_{N(0,v)}[f^(k)].
/// cos/sin members use the Gaussian characteristic function in closed
/// form; the rest go through Gauss-Hermite quadrature.
PairIntegral pair_integral_ex(const TestFunction& f, int k, VarianceParam v,
                              int quad_nodes = 64);
double pair_integral(const TestFunction& f, int k, VarianceParam v,
                     int quad_nodes = 64);

/// Shifted variant int f(z) H_k(z-x, v) phi(z-x, v) dz = E[f^(k)(x+Z)].
/// The artifact only ever uses x = 0; the nonzero-x form is exposed for
/// completeness.
double pair_integral_shifted(const TestFunction& f, int k, VarianceParam v,
                             double x, int quad_nodes = 64);

/// pair_integral(f,0,v0) + n^{-1/2} (a1 P1 + a3 P3 + a5 P5) where
/// Pk = pair_integral(f,k,v0); the per-path expansion value of E[f(Z^n_T)].
double expansion_value(const TestFunction& f, double v0, double a1, double a3,
                       double a5, long n, int quad_nodes = 64);

}  // namespace edgeworth
