#pragma once

#include <stdexcept>

namespace edgeworth {

/// Strictly positive variance of the Gaussian kernel phi(z, v).
class VarianceParam {
public:
    explicit VarianceParam(double v);
    double value() const { return v_; }

private:
    double v_;
};

inline constexpr int kMaxHermiteOrder = 8;

/// phi(z, v) = (2 pi v)^{-1/2} exp(-z^2 / (2v))
double gaussian_pdf(double z, VarianceParam v);

/// Variance-parameterized Hermite polynomial
/// H_k(z, v) = (-1)^k phi(z,v)^{-1} d^k/dz^k phi(z,v),
/// evaluated by the three-term recurrence in (z, 1/v).
double hermite_h(int k, double z, VarianceParam v);

/// First-order expansion density
/// Q_n(z) = {1 + n^{-1/2}(a1 H1 + a3 H3 + a5 H5)} phi(z, v0).
/// May go negative in the tails; never clamped (the moment identities
/// require the signed value).
double qn_density(double z, VarianceParam v0, double a1, double a3, double a5,
                  long n);

}  // namespace edgeworth
