#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace edgeworth {

/// Value of a scalar function g(t, w) together with the partials the
/// coefficient calculus needs: d_t, d_w, d_ww, d_www, d_tw.
struct Jet {
    double val = 0.0;
    double dt = 0.0;
    double dw = 0.0;
    double dww = 0.0;
    double dwww = 0.0;
    double dtw = 0.0;
};

/// All coefficient processes of the Ito pair at one (t, w):
/// drifts Xi, Theta, diffusions Gamma, Sigma, the forward Malliavin
/// derivatives of the drift/diffusion of Y, and the first two
/// w-derivatives of Gamma^2 Sigma^2.
struct CoefficientPoint {
    double xi = 0.0;
    double theta = 0.0;
    double gamma = 0.0;
    double sigma = 0.0;
    double d_plus_theta = 0.0;
    double d_plus_sigma = 0.0;
    double d1_gs = 0.0;
    double d2_gs = 0.0;
    double x_val = 0.0;
    double y_val = 0.0;
};

class ModelEvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Markovian Ito pair X_t = g_X(t, W_t), Y_t = g_Y(t, W_t).
/// Immutable after construction; evaluation is pure.
class GModel {
public:
    using JetFn = std::function<Jet(double, double)>;

    GModel(std::string name, JetFn gx, JetFn gy,
           std::map<std::string, double> params = {},
           bool hypotheses_asserted_by_user = false,
           double valid_t_max = -1.0);

    Jet eval_x(double t, double w) const { return gx_(t, w); }
    Jet eval_y(double t, double w) const { return gy_(t, w); }

    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }
    bool hypotheses_asserted_by_user() const { return user_asserted_; }
    /// Exclusive upper bound on valid evaluation times, or -1 for none.
    double valid_t_max() const { return valid_t_max_; }

private:
    std::string name_;
    JetFn gx_;
    JetFn gy_;
    std::map<std::string, double> params_;
    bool user_asserted_;
    double valid_t_max_;
};

CoefficientPoint eval_coefficients(const GModel& model, double t, double w);

/// Built-ins: brownian_identity; exp_pair(a,b,c,d) with
/// g_X = exp(a w + b t), g_Y = exp(c w + d t); linear_pair(p,q) with
/// g_X = (1 + p t) w, g_Y = (1 + q t) w; bs_delta_hedge(s0, vol, strike,
/// maturity [, horizon]) hedging a zero-rate Black-Scholes call delta.
GModel make_builtin(const std::string& name,
                    const std::map<std::string, double>& params = {});

/// Central finite-difference estimates of the Jet partials; test oracle.
struct PartialsRecord {
    Jet gx;
    Jet gy;
};
PartialsRecord finite_diff_partials(const GModel& model, double t, double w,
                                    double step);

}  // namespace edgeworth
