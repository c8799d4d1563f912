#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "edgeworth/config.hpp"
#include "edgeworth/estimator.hpp"
#include "edgeworth/hermite.hpp"
#include "edgeworth/malliavin.hpp"
#include "edgeworth/oracle.hpp"
#include "edgeworth/pairing.hpp"
#include "edgeworth/path_engine.hpp"

namespace py = pybind11;
using namespace edgeworth;

namespace {

TestFunction make_test_function(const std::string& id,
                                const std::map<std::string, double>& params) {
    return TestFunction::parse(id, params);
}

}  // namespace

PYBIND11_MODULE(_edgeworth, m) {
    m.doc() = "First-order Edgeworth expansion of Ito integral discretization error";

    m.def("gaussian_pdf",
          [](double z, double v) { return gaussian_pdf(z, VarianceParam(v)); },
          py::arg("z"), py::arg("v"));
    m.def("hermite_h",
          [](int k, double z, double v) { return hermite_h(k, z, VarianceParam(v)); },
          py::arg("k"), py::arg("z"), py::arg("v"));
    m.def("qn_density",
          [](double z, double v0, double a1, double a3, double a5, long n) {
              return qn_density(z, VarianceParam(v0), a1, a3, a5, n);
          },
          py::arg("z"), py::arg("v0"), py::arg("a1"), py::arg("a3"),
          py::arg("a5"), py::arg("n"));

    py::class_<TestFunction>(m, "TestFunction")
        .def(py::init(&make_test_function), py::arg("id"),
             py::arg("params") = std::map<std::string, double>{})
        .def_static("cos_shifted", &TestFunction::cos_shifted, py::arg("a"),
                    py::arg("c"))
        .def_static("sin_scaled", &TestFunction::sin_scaled, py::arg("a"))
        .def_static("gauss_bump", &TestFunction::gauss_bump, py::arg("s"))
        .def_static("logistic", &TestFunction::logistic)
        .def_static("monomial", &TestFunction::monomial, py::arg("degree"))
        .def("__call__", [](const TestFunction& f, double z) { return f(z); })
        .def("derivative", &TestFunction::derivative, py::arg("order"), py::arg("z"))
        .def_property_readonly("bounded", &TestFunction::bounded)
        .def_property_readonly("name", &TestFunction::name);

    m.def("pair_integral",
          [](const TestFunction& f, int k, double v, int nodes) {
              return pair_integral(f, k, VarianceParam(v), nodes);
          },
          py::arg("f"), py::arg("k"), py::arg("v"), py::arg("quad_nodes") = 64);
    m.def("expansion_value", &expansion_value, py::arg("f"), py::arg("v0"),
          py::arg("a1"), py::arg("a3"), py::arg("a5"), py::arg("n"),
          py::arg("quad_nodes") = 64);

    py::class_<GModel>(m, "GModel")
        .def_property_readonly("name", &GModel::name);
    m.def("make_builtin", &make_builtin, py::arg("name"),
          py::arg("params") = std::map<std::string, double>{});

    py::class_<CoefficientPoint>(m, "CoefficientPoint")
        .def_readonly("xi", &CoefficientPoint::xi)
        .def_readonly("theta", &CoefficientPoint::theta)
        .def_readonly("gamma", &CoefficientPoint::gamma)
        .def_readonly("sigma", &CoefficientPoint::sigma)
        .def_readonly("d_plus_theta", &CoefficientPoint::d_plus_theta)
        .def_readonly("d_plus_sigma", &CoefficientPoint::d_plus_sigma)
        .def_readonly("d1_gs", &CoefficientPoint::d1_gs)
        .def_readonly("d2_gs", &CoefficientPoint::d2_gs)
        .def_readonly("x_val", &CoefficientPoint::x_val)
        .def_readonly("y_val", &CoefficientPoint::y_val);
    m.def("eval_coefficients", &eval_coefficients, py::arg("model"),
          py::arg("t"), py::arg("w"));

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](double horizon, long n, long m) {
                 GridSpec s{horizon, n, m};
                 s.validate();
                 return s;
             }),
             py::arg("horizon"), py::arg("n"), py::arg("m"))
        .def_readonly("horizon", &GridSpec::horizon)
        .def_readonly("n", &GridSpec::n)
        .def_readonly("m", &GridSpec::m);
    m.def("auto_fine_substeps", &auto_fine_substeps, py::arg("n"));

    py::class_<PathGrid>(m, "PathGrid")
        .def_readonly("w", &PathGrid::w)
        .def_readonly("stream_id", &PathGrid::stream_id)
        .def_readonly("antithetic", &PathGrid::antithetic);
    m.def("sample_path", &sample_path, py::arg("seed"), py::arg("stream_id"),
          py::arg("spec"), py::arg("antithetic") = false);

    py::class_<ErrorSample>(m, "ErrorSample")
        .def_readonly("z", &ErrorSample::z)
        .def_readonly("v0n", &ErrorSample::v0n)
        .def_readonly("stream_id", &ErrorSample::stream_id);
    m.def("discretization_error",
          [](const GModel& model, const PathGrid& path) {
              return discretization_error(model, path);
          },
          py::arg("model"), py::arg("path"));

    py::class_<ExpansionSample>(m, "ExpansionSample")
        .def_readonly("v0", &ExpansionSample::v0)
        .def_readonly("a1", &ExpansionSample::a1)
        .def_readonly("a3", &ExpansionSample::a3)
        .def_readonly("a5", &ExpansionSample::a5);
    m.def("expansion_sample",
          [](const GModel& model, const PathGrid& path) {
              const auto traj = coefficient_trajectory(model, path);
              return expansion_coefficients(traj, dv_trajectories(traj),
                                            path.stream_id);
          },
          py::arg("model"), py::arg("path"));

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("stderr", &McEstimate::stderr_)
        .def_readonly("n_paths", &McEstimate::n_paths)
        .def_property_readonly("ci95", [](const McEstimate& e) {
            return std::make_pair(e.ci95_lo(), e.ci95_hi());
        });

    py::class_<EstimatorOptions>(m, "EstimatorOptions")
        .def(py::init<>())
        .def_readwrite("paths", &EstimatorOptions::paths)
        .def_readwrite("seed", &EstimatorOptions::seed)
        .def_readwrite("threads", &EstimatorOptions::threads)
        .def_readwrite("antithetic", &EstimatorOptions::antithetic)
        .def_readwrite("quad_nodes", &EstimatorOptions::quad_nodes);

    m.def("estimate_error_expectation", &estimate_error_expectation,
          py::arg("model"), py::arg("f"), py::arg("spec"), py::arg("opts"),
          py::call_guard<py::gil_scoped_release>());
    m.def("estimate_expansion", &estimate_expansion, py::arg("model"),
          py::arg("f"), py::arg("spec"), py::arg("opts"),
          py::arg("independent_streams") = false,
          py::call_guard<py::gil_scoped_release>());

    py::class_<CltCheck>(m, "CltCheck")
        .def_readonly("empirical_var", &CltCheck::empirical_var)
        .def_readonly("empirical_stderr", &CltCheck::empirical_stderr)
        .def_readonly("predicted", &CltCheck::predicted)
        .def_readonly("n_paths", &CltCheck::n_paths);
    m.def("clt_variance_check", &clt_variance_check, py::arg("model"),
          py::arg("spec"), py::arg("opts"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<ReportRow>(m, "ReportRow")
        .def_readonly("n", &ReportRow::n)
        .def_readonly("m", &ReportRow::m)
        .def_readonly("paths", &ReportRow::paths)
        .def_readonly("mc", &ReportRow::mc)
        .def_readonly("zeroth_order", &ReportRow::zeroth_order)
        .def_readonly("expansion", &ReportRow::expansion)
        .def_readonly("a1_mean", &ReportRow::a1_mean)
        .def_readonly("a3_mean", &ReportRow::a3_mean)
        .def_readonly("a5_mean", &ReportRow::a5_mean)
        .def_readonly("v0_mean", &ReportRow::v0_mean)
        .def_readonly("scaled_residual", &ReportRow::scaled_residual)
        .def_readonly("scaled_residual_stderr", &ReportRow::scaled_residual_stderr);

    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_readonly("model_name", &ExperimentReport::model_name)
        .def_readonly("f_name", &ExperimentReport::f_name)
        .def_readonly("horizon", &ExperimentReport::horizon)
        .def_readonly("mode", &ExperimentReport::mode)
        .def_readonly("rows", &ExperimentReport::rows);
    m.def("convergence_study", &convergence_study, py::arg("model"),
          py::arg("f"), py::arg("n_list"), py::arg("horizon"), py::arg("m"),
          py::arg("opts"), py::arg("coupled") = true,
          py::call_guard<py::gil_scoped_release>());

    m.def("report_to_csv", &report_to_csv, py::arg("report"));

    py::class_<MomentOracle>(m, "MomentOracle")
        .def_readonly("mean", &MomentOracle::mean)
        .def_readonly("var", &MomentOracle::var)
        .def_readonly("third_cumulant", &MomentOracle::third_cumulant)
        .def_readonly("mean_se", &MomentOracle::mean_se)
        .def_readonly("var_se", &MomentOracle::var_se)
        .def_readonly("k3_se", &MomentOracle::k3_se);
    m.def("brownian_identity_moments", &brownian_identity_moments,
          py::arg("n"), py::arg("T"), py::arg("paths"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
}
