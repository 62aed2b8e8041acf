"""Smoke tests for the Python bindings."""

import math

import pytest

import trunctail as tt


def test_model_and_solving():
    g2 = tt.solve_gamma2(0.6, 0.7)
    assert g2 == pytest.approx(1.4, rel=1e-12)
    model = tt.TruncationModel(0.6, g2, 0.25)
    assert model.p == pytest.approx(0.7, rel=1e-12)
    assert model.gamma == pytest.approx(0.42, rel=1e-12)
    assert model.rho1 == pytest.approx(-2.4, rel=1e-12)


def test_burr_round_trip():
    x = tt.burr_quantile(0.5, 1.0, 1.0)
    assert x == pytest.approx(1.0, rel=1e-12)
    for u in (0.1, 0.5, 0.9, 0.999):
        v = tt.burr_quantile(u, 0.6, 0.25)
        assert tt.burr_survival(v, 0.6, 0.25) == pytest.approx(1.0 - u, abs=1e-10)


def test_second_order_maps():
    assert tt.s_alpha(-1.0, 2.0) == pytest.approx(0.68, rel=1e-12)
    assert tt.s_alpha_inverse(0.68, 2.0) == pytest.approx(-1.0, rel=1e-10)
    assert tt.q_alpha(-2.4, 0.6, 2.0) == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(tt.NotAdmissibleError):
        tt.s_alpha_inverse(0.8, 2.0)


def test_estimation_chain():
    model = tt.TruncationModel(0.6, tt.solve_gamma2(0.6, 0.9), 0.25)
    sample = tt.draw_truncated_sample(model, 2000, 7)
    assert len(sample) > 1500
    tables = tt.build_tables(sample)
    n = len(sample)
    est = tt.full_pipeline(sample, max(10, n // 10))
    assert est.upsilon_used == tt.u_n(n, 0.01)
    assert math.isfinite(est.gamma1)
    assert math.isfinite(est.gamma_bmn)
    assert est.rho1_used < 0.0
    # weights at k=1 trivially normalize
    assert tt.bmn_weights(tables, 1) == [1.0]


def test_determinism():
    model = tt.TruncationModel(0.6, 1.4, 0.25)
    a = tt.draw_truncated_sample(model, 500, 123)
    b = tt.draw_truncated_sample(model, 500, 123)
    assert a.x == b.x
    assert a.y == b.y


def test_variances():
    ctx = tt.SecondOrderContext(0.6, 1.4, -2.4, -2.4, 2.0)
    assert tt.sigma_bmn_sq(ctx) == pytest.approx(0.522, abs=1e-9)
    wide = tt.SecondOrderContext(0.6, 5.4, -2.4, -2.4, 2.0)
    assert tt.sigma_star_sq(wide) >= 0.0
    assert tt.sigma_alpha_sq(wide) >= 0.0
    k = tt.constants(wide)
    assert k.tau5 == pytest.approx((-2.4 - 1.0) / (2.0 * 0.6 * -2.4), rel=1e-12)


def test_selection():
    assert tt.u_n(1000, 0.01) == 933
    assert tt.reiss_thomas_k(lambda k: 0.5, 100) == 2


def test_mc_cell():
    cell = tt.run_cell(0.6, 0.7, 100, replicates=5, seed=3)
    assert cell.failures <= 5
    assert cell.rmse_gamma1 >= 0.0
