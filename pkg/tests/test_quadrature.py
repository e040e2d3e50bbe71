import math

import numpy as np
import pytest

from hyperhs.quadrature import (
    QuadConfig,
    QuadratureError,
    QuadResult,
    gauss_hermite_rule,
    gauss_laguerre_rule,
    integrate_1d,
    integrate_2d,
    integrate_gaussian_nd,
)


CFG = QuadConfig()


def test_polynomial_exactness():
    # the embedded Gauss rule is exact through degree 11 per panel
    for deg in range(12):
        r = integrate_1d(lambda x: x ** deg, 0.0, 1.0, CFG)
        assert r.value.real == pytest.approx(1.0 / (deg + 1), abs=1e-14)
        assert r.converged


def test_known_integrals():
    r = integrate_1d(math.exp, 0.0, 1.0, CFG)
    assert r.value.real == pytest.approx(math.e - 1.0, rel=1e-12)
    r = integrate_1d(lambda x: math.exp(-x * x), -math.inf, math.inf, CFG)
    assert r.value.real == pytest.approx(math.sqrt(math.pi), rel=1e-10)
    r = integrate_1d(lambda t: math.exp(-t) * t ** 3, 0.0, math.inf, CFG)
    assert r.value.real == pytest.approx(6.0, rel=1e-10)


def test_oscillatory():
    r = integrate_1d(lambda x: math.cos(40.0 * x), 0.0, 1.0, CFG)
    assert r.value.real == pytest.approx(math.sin(40.0) / 40.0, abs=1e-12)


def test_complex_integrand():
    r = integrate_1d(lambda x: complex(math.cos(x), math.sin(x)), 0.0, 1.0, CFG)
    assert r.value.real == pytest.approx(math.sin(1.0), rel=1e-12)
    assert r.value.imag == pytest.approx(1.0 - math.cos(1.0), rel=1e-12)


def test_degenerate_interval():
    r = integrate_1d(lambda x: 1.0, 2.0, 2.0, CFG)
    assert r.value == 0


def test_budget_exhaustion_flagged():
    cfg = QuadConfig(rel_tol=1e-14, abs_tol=1e-300, max_evals=30)
    r = integrate_1d(lambda x: math.exp(-x) * math.cos(10 * x), 0.0, math.inf, cfg)
    assert not r.converged


def test_nonfinite_integrand_raises():
    with pytest.raises(QuadratureError):
        integrate_1d(lambda x: math.nan, 0.0, 1.0, CFG)


def test_err_est_covers_true_error():
    r = integrate_1d(lambda x: math.sqrt(abs(x - 0.3)), 0.0, 1.0, CFG)
    exact = (0.3 ** 1.5 + 0.7 ** 1.5) * 2.0 / 3.0
    assert abs(r.value.real - exact) <= max(10 * r.err_est, 1e-12)


def test_integrate_2d_separable():
    r = integrate_2d(lambda x, y: math.exp(-x - y), 0.0, math.inf, 0.0, math.inf, CFG)
    assert r.value.real == pytest.approx(1.0, rel=1e-9)


def test_integrate_2d_kink_split():
    exact = 2.0 / 3.0  # int_0^1 int_0^1 |x - y|^(1/2) would be harder; use |y-1/2|
    r = integrate_2d(lambda x, y: abs(y - 0.5), 0.0, 1.0, 0.0, 1.0, CFG,
                     y_split=lambda x: 0.5)
    assert r.value.real == pytest.approx(0.25, rel=1e-12)
    assert exact  # silence the unused hint


def test_gauss_hermite_moments():
    p, w = gauss_hermite_rule(24)
    s2pi = math.sqrt(2.0 * math.pi)
    assert float(np.sum(w)) == pytest.approx(s2pi, rel=1e-13)
    assert float(np.sum(w * p ** 2)) == pytest.approx(s2pi, rel=1e-13)
    assert float(np.sum(w * p ** 4)) == pytest.approx(3 * s2pi, rel=1e-13)
    assert float(np.sum(w * p ** 3)) == pytest.approx(0.0, abs=1e-13)


def test_gauss_laguerre_moments():
    t, w = gauss_laguerre_rule(32)
    for k in range(5):
        assert float(np.sum(w * t ** k)) == pytest.approx(math.factorial(k), rel=1e-12)


@pytest.mark.parametrize("dims", [1, 2, 3, 4])
def test_gaussian_nd_moments(dims):
    def f(pts):
        return np.prod(pts ** 2, axis=1)

    r = integrate_gaussian_nd(f, dims, QuadConfig(gauss_nodes=12))
    assert r.value.real == pytest.approx((2 * math.pi) ** (dims / 2.0), rel=1e-10)


def test_quadresult_real_property():
    r = QuadResult(value=1.5 + 0j, err_est=0.0, n_evals=1, converged=True)
    assert r.real == 1.5


def test_config_with():
    cfg = QuadConfig().with_(rel_tol=1e-5)
    assert cfg.rel_tol == 1e-5
    assert cfg.abs_tol == QuadConfig().abs_tol
