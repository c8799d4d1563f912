#include "edgeworth/model.hpp"

#include <cmath>

namespace edgeworth {

namespace {

double require_param(const std::map<std::string, double>& params,
                     const std::string& key, const std::string& model) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("model " + model + ": missing parameter '" + key + "'");
    return it->second;
}

double param_or(const std::map<std::string, double>& params,
                const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }
double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

void check_finite(const Jet& j, const char* which) {
    const double fields[] = {j.val, j.dt, j.dw, j.dww, j.dwww, j.dtw};
    const char* names[] = {"value", "d_t", "d_w", "d_ww", "d_www", "d_tw"};
    for (int i = 0; i < 6; ++i) {
        if (!std::isfinite(fields[i]))
            throw ModelEvalError(std::string("non-finite partial ") + names[i] +
                                 " of " + which);
    }
}

Jet exp_jet(double a, double b, double t, double w) {
    const double e = std::exp(a * w + b * t);
    Jet j;
    j.val = e;
    j.dt = b * e;
    j.dw = a * e;
    j.dww = a * a * e;
    j.dwww = a * a * a * e;
    j.dtw = a * b * e;
    return j;
}

// Call delta N(d1) under zero-rate Black-Scholes with spot s0 exp(vol w - vol^2 t / 2).
Jet bs_delta_jet(double s0, double vol, double strike, double maturity,
                 double t, double w) {
    const double tau = maturity - t;
    if (!(tau > 0.0))
        throw ModelEvalError("delta singular at maturity (t >= option maturity)");
    const double sqrt_tau = std::sqrt(tau);
    const double u = std::log(s0 / strike) + vol * w - 0.5 * vol * vol * t;
    const double d1 = u / (vol * sqrt_tau) + 0.5 * vol * sqrt_tau;
    const double pdf = norm_pdf(d1);
    const double d1_w = 1.0 / sqrt_tau;
    const double d1_t = -0.5 * vol / sqrt_tau + 0.5 * u / (vol * tau * sqrt_tau) -
                        0.25 * vol / sqrt_tau;
    const double d1_tw = 0.5 / (tau * sqrt_tau);
    Jet j;
    j.val = norm_cdf(d1);
    j.dw = pdf * d1_w;
    j.dww = -d1 * pdf / tau;
    j.dwww = (d1 * d1 - 1.0) * pdf / (tau * sqrt_tau);
    j.dt = pdf * d1_t;
    j.dtw = -d1 * pdf * d1_t * d1_w + pdf * d1_tw;
    return j;
}

}  // namespace

GModel::GModel(std::string name, JetFn gx, JetFn gy,
               std::map<std::string, double> params,
               bool hypotheses_asserted_by_user, double valid_t_max)
    : name_(std::move(name)),
      gx_(std::move(gx)),
      gy_(std::move(gy)),
      params_(std::move(params)),
      user_asserted_(hypotheses_asserted_by_user),
      valid_t_max_(valid_t_max) {}

CoefficientPoint eval_coefficients(const GModel& model, double t, double w) {
    if (!std::isfinite(t) || !std::isfinite(w))
        throw std::invalid_argument("non-finite evaluation point");
    if (model.valid_t_max() >= 0.0 && t >= model.valid_t_max())
        throw ModelEvalError("evaluation time outside the model's valid range");
    const Jet gx = model.eval_x(t, w);
    const Jet gy = model.eval_y(t, w);
    check_finite(gx, "g_X");
    check_finite(gy, "g_Y");

    CoefficientPoint p;
    p.x_val = gx.val;
    p.y_val = gy.val;
    p.xi = gx.dt + 0.5 * gx.dww;
    p.theta = gy.dt + 0.5 * gy.dww;
    p.gamma = gx.dw;
    p.sigma = gy.dw;
    p.d_plus_theta = gy.dtw + 0.5 * gy.dwww;
    p.d_plus_sigma = gy.dww;
    // P = gamma^2 sigma^2; d1_gs = dP/dw, d2_gs = d^2P/dw^2 with
    // gamma' = g_X'' etc. along w.
    const double g = gx.dw, gp = gx.dww, gpp = gx.dwww;
    const double s = gy.dw, sp = gy.dww, spp = gy.dwww;
    p.d1_gs = 2.0 * g * gp * s * s + 2.0 * s * sp * g * g;
    p.d2_gs = 2.0 * (gp * gp + g * gpp) * s * s + 8.0 * g * gp * s * sp +
              2.0 * (sp * sp + s * spp) * g * g;
    return p;
}

GModel make_builtin(const std::string& name,
                    const std::map<std::string, double>& params) {
    if (name == "brownian_identity") {
        auto jet = [](double, double w) {
            Jet j;
            j.val = w;
            j.dw = 1.0;
            return j;
        };
        return GModel("brownian_identity", jet, jet);
    }
    if (name == "exp_pair") {
        const double a = require_param(params, "a", name);
        const double b = param_or(params, "b", 0.0);
        const double c = require_param(params, "c", name);
        const double d = param_or(params, "d", 0.0);
        if (a == 0.0 || c == 0.0)
            throw std::invalid_argument(
                "exp_pair: diffusion product Gamma*Sigma identically zero (a and c must be nonzero)");
        return GModel("exp_pair",
                      [a, b](double t, double w) { return exp_jet(a, b, t, w); },
                      [c, d](double t, double w) { return exp_jet(c, d, t, w); },
                      {{"a", a}, {"b", b}, {"c", c}, {"d", d}});
    }
    if (name == "linear_pair") {
        const double p = param_or(params, "p", 0.0);
        const double q = param_or(params, "q", 0.0);
        auto jet = [](double slope) {
            return [slope](double t, double w) {
                Jet j;
                j.val = (1.0 + slope * t) * w;
                j.dt = slope * w;
                j.dw = 1.0 + slope * t;
                j.dtw = slope;
                return j;
            };
        };
        return GModel("linear_pair", jet(p), jet(q), {{"p", p}, {"q", q}});
    }
    if (name == "bs_delta_hedge") {
        const double s0 = require_param(params, "s0", name);
        const double vol = require_param(params, "vol", name);
        const double strike = require_param(params, "strike", name);
        const double maturity = require_param(params, "maturity", name);
        if (!(s0 > 0.0)) throw std::invalid_argument("bs_delta_hedge: s0 must be positive");
        if (!(vol > 0.0)) throw std::invalid_argument("bs_delta_hedge: vol must be positive");
        if (!(strike > 0.0)) throw std::invalid_argument("bs_delta_hedge: strike must be positive");
        if (!(maturity > 0.0)) throw std::invalid_argument("bs_delta_hedge: maturity must be positive");
        auto it = params.find("horizon");
        if (it != params.end() && maturity <= it->second)
            throw std::invalid_argument("bs_delta_hedge: delta singular at maturity "
                                        "(option maturity must exceed the simulation horizon)");
        auto gx = [s0, vol, strike, maturity](double t, double w) {
            return bs_delta_jet(s0, vol, strike, maturity, t, w);
        };
        auto gy = [s0, vol](double t, double w) {
            Jet j = exp_jet(vol, -0.5 * vol * vol, t, w);
            j.val *= s0; j.dt *= s0; j.dw *= s0; j.dww *= s0; j.dwww *= s0; j.dtw *= s0;
            return j;
        };
        return GModel("bs_delta_hedge", gx, gy, params, false, maturity);
    }
    throw std::invalid_argument("unknown model: " + name);
}

PartialsRecord finite_diff_partials(const GModel& model, double t, double w,
                                    double step) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    auto fd = [step, t, w](const std::function<double(double, double)>& g) {
        const double h = step;
        Jet j;
        j.val = g(t, w);
        j.dt = (g(t + h, w) - g(t - h, w)) / (2.0 * h);
        j.dw = (g(t, w + h) - g(t, w - h)) / (2.0 * h);
        j.dww = (g(t, w + h) - 2.0 * j.val + g(t, w - h)) / (h * h);
        j.dwww = (g(t, w + 2 * h) - 2.0 * g(t, w + h) + 2.0 * g(t, w - h) -
                  g(t, w - 2 * h)) / (2.0 * h * h * h);
        j.dtw = (g(t + h, w + h) - g(t + h, w - h) - g(t - h, w + h) +
                 g(t - h, w - h)) / (4.0 * h * h);
        return j;
    };
    PartialsRecord rec;
    rec.gx = fd([&](double tt, double ww) { return model.eval_x(tt, ww).val; });
    rec.gy = fd([&](double tt, double ww) { return model.eval_y(tt, ww).val; });
    return rec;
}

}  // namespace edgeworth
