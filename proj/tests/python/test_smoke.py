import math

import pytest

import edgeworth as ew


def test_hermite_values():
    assert ew.gaussian_pdf(0.0, 1.0) == pytest.approx(1.0 / math.sqrt(2 * math.pi))
    assert ew.hermite_h(3, 1.0, 1.0) == pytest.approx(-2.0)
    assert ew.hermite_h(3, 2.0, 0.5) == pytest.approx(40.0)
    with pytest.raises(ValueError):
        ew.gaussian_pdf(0.0, -1.0)


def test_pairing_and_expansion():
    f = ew.TestFunction.cos_shifted(1.0, 0.0)
    assert ew.pair_integral(f, 0, 0.5) == pytest.approx(math.exp(-0.25))
    cubic = ew.TestFunction.monomial(3)
    assert ew.expansion_value(cubic, 0.5, 0.0, 1.0 / 6.0, 0.0, 16) == pytest.approx(0.25)


def test_path_sampling_is_deterministic():
    spec = ew.GridSpec(1.0, 4, 16)
    p1 = ew.sample_path(42, 7, spec)
    p2 = ew.sample_path(42, 7, spec)
    assert list(p1.w) == list(p2.w)
    assert p1.w[0] == 0.0
    assert len(p1.w) == 65
    assert ew.auto_fine_substeps(256) == 128


def test_model_coefficients():
    model = ew.make_builtin("exp_pair", {"a": 0.5, "b": 0.0, "c": 0.5, "d": 0.0})
    point = ew.eval_coefficients(model, 0.0, 0.0)
    assert point.gamma == pytest.approx(0.5)
    assert point.d1_gs == pytest.approx(0.125)
    with pytest.raises(ValueError):
        ew.make_builtin("no_such_model")


def test_convergence_study_smoke():
    model = ew.make_builtin("brownian_identity")
    f = ew.TestFunction.monomial(3)
    opts = ew.EstimatorOptions()
    opts.paths = 300
    opts.seed = 3
    opts.threads = 1
    report = ew.convergence_study(model, f, [4, 16], 1.0, 16, opts, True)
    assert len(report.rows) == 2
    row = report.rows[0]
    assert row.v0_mean == pytest.approx(0.5)
    assert row.expansion.mean == pytest.approx(0.5)
    csv = ew.report_to_csv(report)
    assert csv.startswith("# schema=1\n")
    assert "brownian_identity" in csv
