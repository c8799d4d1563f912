#include "edgeworth/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "edgeworth/gauss_hermite.hpp"
#include "edgeworth/hermite.hpp"
#include "edgeworth/pairing.hpp"
#include "json.hpp"

namespace edgeworth {

using nlohmann::json;

const char* kReportCsvHeader =
    "model,f,T,n,m,paths,mode,mc_mean,mc_stderr,zeroth_mean,zeroth_stderr,"
    "expansion_mean,expansion_stderr,a1_mean,a3_mean,a5_mean,v0_mean,"
    "scaled_residual,scaled_residual_stderr";
const char* kCltCsvHeader = "n,paths,empirical_var,empirical_stderr,predicted,ratio";

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::map<std::string, double> params_from_json(const json& j,
                                               const std::string& key) {
    std::map<std::string, double> out;
    if (!j.contains("params")) return out;
    const json& p = j.at("params");
    if (!p.is_object()) throw ConfigError("config key '" + key + ".params' must be an object");
    for (auto it = p.begin(); it != p.end(); ++it) {
        if (!it.value().is_number())
            throw ConfigError("config key '" + key + ".params." + it.key() + "' must be numeric");
        out[it.key()] = it.value().get<double>();
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig c;
    try {
        if (!j.contains("model")) throw ConfigError("missing config key 'model'");
        if (!j.at("model").contains("name"))
            throw ConfigError("missing config key 'model.name'");
        c.model_name = j.at("model").at("name").get<std::string>();
        c.model_params = params_from_json(j.at("model"), "model");
        c.hypotheses_asserted_by_user =
            j.at("model").value("hypotheses_asserted_by_user", false);

        if (!j.contains("test_function"))
            throw ConfigError("missing config key 'test_function'");
        if (!j.at("test_function").contains("id"))
            throw ConfigError("missing config key 'test_function.id'");
        c.f_id = j.at("test_function").at("id").get<std::string>();
        c.f_params = params_from_json(j.at("test_function"), "test_function");

        c.horizon = j.value("T", 1.0);
        if (!(c.horizon > 0.0)) throw ConfigError("config key 'T' must be positive");

        if (!j.contains("n_list")) throw ConfigError("missing config key 'n_list'");
        for (const auto& v : j.at("n_list")) c.n_list.push_back(v.get<long>());
        if (c.n_list.empty()) throw ConfigError("config key 'n_list' must be non-empty");
        for (std::size_t i = 1; i < c.n_list.size(); ++i)
            if (c.n_list[i] <= c.n_list[i - 1])
                throw ConfigError("config key 'n_list' must be strictly ascending");

        if (j.contains("m")) {
            const json& m = j.at("m");
            if (m.is_string()) {
                if (m.get<std::string>() != "auto")
                    throw ConfigError("config key 'm' must be a positive integer or \"auto\"");
                c.m = -1;
            } else {
                c.m = m.get<long>();
                if (c.m < 2) throw ConfigError("config key 'm' must be >= 2");
            }
        }

        if (!j.contains("paths")) throw ConfigError("missing config key 'paths'");
        c.paths = j.at("paths").get<long>();
        if (c.paths < 100) throw ConfigError("config key 'paths' below minimum (100)");

        c.seed = j.value("seed", 0ULL);
        c.mode = j.value("mode", std::string("coupled"));
        if (c.mode != "coupled" && c.mode != "independent")
            throw ConfigError("config key 'mode' must be 'coupled' or 'independent'");
        c.antithetic = j.value("antithetic", false);
        c.threads = j.value("threads", 0);
        c.quadrature_nodes = j.value("quadrature_nodes", 64);
        if (c.quadrature_nodes < 1 || c.quadrature_nodes > 512)
            throw ConfigError("config key 'quadrature_nodes' must be in [1, 512]");
        c.output = j.value("output", std::string("report.csv"));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

GModel resolve_model(const ExperimentConfig& config) {
    auto params = config.model_params;
    if (config.model_name == "bs_delta_hedge" && !params.count("horizon"))
        params["horizon"] = config.horizon;
    try {
        return make_builtin(config.model_name, params);
    } catch (const std::invalid_argument& e) {
        throw ResolveError(std::string("model: ") + e.what());
    }
}

TestFunction resolve_test_function(const ExperimentConfig& config) {
    try {
        return TestFunction::parse(config.f_id, config.f_params);
    } catch (const std::invalid_argument& e) {
        throw ResolveError(std::string("test_function: ") + e.what());
    }
}

std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "# schema=1\n" << kReportCsvHeader << "\n";
    for (const ReportRow& r : report.rows) {
        out << report.model_name << ',' << report.f_name << ','
            << fmt(report.horizon) << ',' << r.n << ',' << r.m << ','
            << r.paths << ',' << report.mode << ',' << fmt(r.mc.mean) << ','
            << fmt(r.mc.stderr_) << ',' << fmt(r.zeroth_order.mean) << ','
            << fmt(r.zeroth_order.stderr_) << ',' << fmt(r.expansion.mean)
            << ',' << fmt(r.expansion.stderr_) << ',' << fmt(r.a1_mean) << ','
            << fmt(r.a3_mean) << ',' << fmt(r.a5_mean) << ',' << fmt(r.v0_mean)
            << ',' << fmt(r.scaled_residual) << ','
            << fmt(r.scaled_residual_stderr) << '\n';
    }
    return out.str();
}

void run_experiment(const ExperimentConfig& config) {
    const GModel model = resolve_model(config);
    const TestFunction f = resolve_test_function(config);
    EstimatorOptions opts;
    opts.paths = config.paths;
    opts.seed = config.seed;
    opts.threads = config.threads;
    opts.antithetic = config.antithetic;
    opts.quad_nodes = config.quadrature_nodes;
    ExperimentReport report;
    try {
        report = convergence_study(model, f, config.n_list, config.horizon,
                                   config.m, opts, config.mode == "coupled");
    } catch (const DegenerateModelError& e) {
        throw NumericError(e.what());
    } catch (const ModelEvalError& e) {
        throw NumericError(e.what());
    }
    std::ofstream out(config.output, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + config.output);
    out << report_to_csv(report);
}

void run_clt_experiment(const ExperimentConfig& config) {
    const GModel model = resolve_model(config);
    EstimatorOptions opts;
    opts.paths = config.paths;
    opts.seed = config.seed;
    opts.threads = config.threads;
    opts.quad_nodes = config.quadrature_nodes;
    std::ostringstream out;
    out << "# schema=1\n" << kCltCsvHeader << "\n";
    for (long n : config.n_list) {
        GridSpec spec{config.horizon, n, config.m < 0 ? auto_fine_substeps(n) : config.m};
        CltCheck check;
        try {
            check = clt_variance_check(model, spec, opts);
        } catch (const DegenerateModelError& e) {
            throw NumericError(e.what());
        } catch (const ModelEvalError& e) {
            throw NumericError(e.what());
        }
        out << n << ',' << check.n_paths << ',' << fmt(check.empirical_var)
            << ',' << fmt(check.empirical_stderr) << ',' << fmt(check.predicted)
            << ',' << fmt(check.empirical_var / check.predicted) << '\n';
    }
    std::ofstream file(config.output, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file: " + config.output);
    file << out.str();
}

namespace {

// k-fold central finite difference of g at z, in extended precision with
// Richardson extrapolation so the k = 5 quotient survives cancellation.
long double central_kth_derivative(
    const std::function<long double(long double)>& g, int k, long double z,
    long double h) {
    auto diff = [&](long double step) {
        long double acc = 0.0L;
        long double binom = 1.0L;
        for (int i = 0; i <= k; ++i) {
            acc += ((i % 2 == 0) ? 1.0L : -1.0L) * binom *
                   g(z + (0.5L * k - i) * step);
            binom = binom * (k - i) / (i + 1.0L);
        }
        return acc / std::pow(step, static_cast<long double>(k));
    };
    return (4.0L * diff(h) - diff(2.0L * h)) / 3.0L;
}

struct Check {
    const char* name;
    bool (*fn)();
};

bool check_hermite_recurrence() {
    // Explicit polynomials for k <= 5.
    for (double v : {0.25, 0.5, 1.0, 2.0}) {
        const VarianceParam vp(v);
        for (double z = -3.0; z <= 3.0; z += 0.5) {
            const double r = z / v;
            const double expl[6] = {
                1.0,
                r,
                r * r - 1.0 / v,
                r * r * r - 3.0 * r / v,
                r * r * r * r - 6.0 * r * r / v + 3.0 / (v * v),
                r * r * r * r * r - 10.0 * r * r * r / v + 15.0 * r / (v * v)};
            for (int k = 0; k <= 5; ++k)
                if (std::abs(hermite_h(k, z, vp) - expl[k]) > 1e-12 * std::max(1.0, std::abs(expl[k])))
                    return false;
        }
    }
    return true;
}

bool check_hermite_fd() {
    for (double v : {0.5, 1.0, 2.0}) {
        const VarianceParam vp(v);
        const long double h = 4e-3L * std::sqrt(static_cast<long double>(v));
        const auto kernel = [&](long double x) -> long double {
            return std::exp(-x * x / (2.0L * v)) /
                   std::sqrt(2.0L * static_cast<long double>(M_PI) * v);
        };
        for (double z = -2.0; z <= 2.0; z += 0.5) {
            const double phi = gaussian_pdf(z, vp);
            for (int k = 1; k <= 5; ++k) {
                const double fd =
                    static_cast<double>(central_kth_derivative(kernel, k, z, h));
                const double want = hermite_h(k, z, vp);
                const double got = ((k % 2 == 0) ? 1.0 : -1.0) * fd / phi;
                if (std::abs(got - want) > 1e-5 * std::max(1.0, std::abs(want)))
                    return false;
            }
        }
    }
    return true;
}

bool check_pairing_identity() {
    const TestFunction fns[] = {TestFunction::cos_shifted(1.0, 1.0),
                                TestFunction::sin_scaled(0.7),
                                TestFunction::gauss_bump(1.3),
                                TestFunction::logistic()};
    for (const auto& f : fns) {
        for (double v : {0.25, 0.5, 1.0, 2.0}) {
            const VarianceParam vp(v);
            for (int k = 0; k <= 5; ++k) {
                // Direct quadrature of f H_k phi, against the identity route.
                const double direct = gaussian_expectation(
                    [&](double z) { return f(z) * hermite_h(k, z, vp); }, v, 96);
                const double ident = pair_integral(f, k, vp, 96);
                if (std::abs(direct - ident) > 1e-8) return false;
            }
        }
    }
    return true;
}

bool check_heat_equation() {
    const double hz = 1e-4, hv = 1e-4;
    for (double v = 0.2; v <= 2.0; v += 0.2) {
        for (double z = -5.0; z <= 5.0; z += 0.5) {
            const auto phi = [](double zz, double vv) {
                return gaussian_pdf(zz, VarianceParam(vv));
            };
            const double dv = (phi(z, v + hv) - phi(z, v - hv)) / (2.0 * hv);
            const double dzz =
                (phi(z + hz, v) - 2.0 * phi(z, v) + phi(z - hz, v)) / (hz * hz);
            if (std::abs(dv - 0.5 * dzz) > 1e-5) return false;
        }
    }
    return true;
}

bool check_qn_mass() {
    for (double v : {0.5, 1.0}) {
        for (double a1 : {0.0, 0.3}) {
            const double mass = gaussian_expectation(
                [&](double z) {
                    return qn_density(z, VarianceParam(v), a1, 0.4, -0.2, 4) /
                           gaussian_pdf(z, VarianceParam(v));
                },
                v, 64);
            if (std::abs(mass - 1.0) > 1e-8) return false;
        }
    }
    return true;
}

bool check_model_fd() {
    const std::pair<const char*, std::map<std::string, double>> builtins[] = {
        {"brownian_identity", {}},
        {"exp_pair", {{"a", 0.5}, {"b", 0.1}, {"c", 0.5}, {"d", -0.2}}},
        {"linear_pair", {{"p", 0.3}, {"q", -0.2}}},
        {"bs_delta_hedge",
         {{"s0", 100.0}, {"vol", 0.2}, {"strike", 100.0}, {"maturity", 2.0}}},
    };
    for (const auto& [name, params] : builtins) {
        const GModel model = make_builtin(name, params);
        for (double t = 0.0; t <= 0.9; t += 0.225) {
            for (double w = -2.0; w <= 2.0; w += 1.0) {
                const PartialsRecord fd = finite_diff_partials(model, t, w, 1e-4);
                const Jet ax = model.eval_x(t, w);
                const Jet ay = model.eval_y(t, w);
                auto close = [](double got, double want, double tol) {
                    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
                };
                if (!close(fd.gx.dt, ax.dt, 1e-4) || !close(fd.gx.dw, ax.dw, 1e-4) ||
                    !close(fd.gx.dww, ax.dww, 1e-4) || !close(fd.gx.dtw, ax.dtw, 1e-4) ||
                    !close(fd.gy.dt, ay.dt, 1e-4) || !close(fd.gy.dw, ay.dw, 1e-4) ||
                    !close(fd.gy.dww, ay.dww, 1e-4) || !close(fd.gy.dtw, ay.dtw, 1e-4))
                    return false;
                // Third differences are noisier at this step.
                const PartialsRecord fd3 = finite_diff_partials(model, t, w, 1e-3);
                if (!close(fd3.gx.dwww, ax.dwww, 1e-3) ||
                    !close(fd3.gy.dwww, ay.dwww, 1e-3))
                    return false;
            }
        }
    }
    return true;
}

bool check_rng_determinism() {
    GridSpec spec{1.0, 4, 8};
    const PathGrid p1 = sample_path(42, 7, spec);
    const PathGrid p2 = sample_path(42, 7, spec);
    if (p1.w != p2.w) return false;
    const PathGrid anti = sample_path(42, 7, spec, true);
    for (std::size_t k = 0; k < p1.w.size(); ++k)
        if (anti.w[k] != -p1.w[k]) return false;
    return true;
}

bool check_reduction_determinism() {
    const GModel model = make_builtin("exp_pair",
                                      {{"a", 0.5}, {"c", 0.5}});
    const TestFunction f = TestFunction::cos_shifted(1.0, 1.0);
    EstimatorOptions opts;
    opts.paths = 3000;
    opts.seed = 9;
    opts.threads = 1;
    const auto r1 = convergence_study(model, f, {4}, 1.0, 16, opts, true);
    opts.threads = 4;
    const auto r4 = convergence_study(model, f, {4}, 1.0, 16, opts, true);
    const ReportRow& a = r1.rows[0];
    const ReportRow& b = r4.rows[0];
    return a.mc.mean == b.mc.mean && a.mc.stderr_ == b.mc.stderr_ &&
           a.expansion.mean == b.expansion.mean &&
           a.scaled_residual == b.scaled_residual;
}

}  // namespace

int selftest(std::ostream& log) {
    const Check checks[] = {
        {"hermite recurrence", check_hermite_recurrence},
        {"hermite derivative consistency", check_hermite_fd},
        {"pairing identity", check_pairing_identity},
        {"heat equation", check_heat_equation},
        {"qn mass preservation", check_qn_mass},
        {"model finite differences", check_model_fd},
        {"rng determinism", check_rng_determinism},
        {"reduction determinism", check_reduction_determinism},
    };
    for (const Check& c : checks) {
        bool ok = false;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            log << "FAIL " << c.name << " (exception: " << e.what() << ")\n";
            return 1;
        }
        if (!ok) {
            log << "FAIL " << c.name << "\n";
            return 1;
        }
        log << "ok   " << c.name << "\n";
    }
    return 0;
}

}  // namespace edgeworth
