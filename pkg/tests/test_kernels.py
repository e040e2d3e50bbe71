import math

import mpmath
import numpy as np
import pytest

from hyperhs import _kernels_py
from hyperhs import kernels

try:
    from hyperhs import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [_kernels_py] + ([_ckernels] if _ckernels is not None else [])


def j0_integral_rep(x: float) -> float:
    """(1/pi) int_0^pi cos(x sin t) dt by dense Simpson."""
    n = 4000
    t = np.linspace(0.0, math.pi, n + 1)
    y = np.cos(x * np.sin(t))
    h = math.pi / n
    w = np.full(n + 1, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return float(np.sum(w * y) * h / 3.0 / math.pi)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_j0_triple_agreement(mod):
    # series/asymptotic implementation vs reference vs integral representation
    for x in np.linspace(0.0, 40.0, 81):
        ours = mod.bessel_j0(float(x))
        ref = float(mpmath.besselj(0, float(x)))
        rep = j0_integral_rep(float(x))
        assert abs(ours - ref) < 1e-10
        assert abs(ours - rep) < 1e-10


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_j0_seam_continuity(mod):
    lo, hi = mod.bessel_j0(15.0 - 1e-9), mod.bessel_j0(15.0 + 1e-9)
    assert abs(lo - hi) < 1e-9


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_j0_array_matches_scalar(mod):
    xs = np.linspace(0.0, 60.0, 257)
    arr = mod.bessel_j0_array(xs)
    for x, v in zip(xs, arr):
        assert abs(v - mod.bessel_j0(float(x))) < 1e-13
    assert isinstance(mod.bessel_j0_array(np.float64(2.0)), float)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_j0_even(mod):
    assert mod.bessel_j0(-3.7) == mod.bessel_j0(3.7)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_erfi_reference(mod):
    for x in [0.0, 0.1, 1.0, 5.9, 6.1, 15.0, 26.0, -2.0]:
        ref = float(mpmath.erfi(x))
        assert mod.erfi(x) == pytest.approx(ref, rel=1e-13, abs=1e-300)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_erfi_overflow_guard(mod):
    with pytest.raises(OverflowError):
        mod.erfi(30.0)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_exp_erfi_product_fused(mod):
    # x far beyond where erfi alone overflows
    for x in [10.0, 50.0, 200.0]:
        got = mod.exp_erfi_product(x * x, x)
        ref = float(mpmath.exp(-x * x) * mpmath.erfi(x))
        assert got == pytest.approx(ref, rel=1e-12)
    got = mod.exp_erfi_product(4.0, 1.5)
    assert got == pytest.approx(math.exp(-4.0) * mod.erfi(1.5), rel=1e-13)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_phi1_series_limits(mod):
    # x=0 and y=0 reduce to single-variable hypergeometrics
    assert mod.phi1_series(1.0, 0.5, 1.5, 0.0, 0.7) == pytest.approx(
        float(mpmath.hyp1f1(1.0, 1.5, 0.7)), rel=1e-13)
    assert mod.phi1_series(1.0, 0.5, 1.5, -0.3, 0.0) == pytest.approx(
        float(mpmath.hyp2f1(1.0, 0.5, 1.5, -0.3)), rel=1e-13)


@pytest.mark.skipif(_ckernels is None, reason="compiled backend absent")
def test_backends_cross_check():
    xs = np.linspace(0.0, 60.0, 501)
    a = _kernels_py.bessel_j0_array(xs)
    b = _ckernels.bessel_j0_array(xs)
    assert np.max(np.abs(a - b)) < 1e-13
    for x in [0.3, 2.0, 6.5, 20.0]:
        assert _ckernels.erfi(x) == pytest.approx(_kernels_py.erfi(x), rel=1e-14)
    assert _ckernels.phi1_series(2.0, 0.5, 2.5, 0.4, -3.0) == pytest.approx(
        _kernels_py.phi1_series(2.0, 0.5, 2.5, 0.4, -3.0), rel=1e-13)


def test_dispatcher_exports():
    assert kernels.BACKEND in ("c", "python")
    assert callable(kernels.bessel_j0)
    assert callable(kernels.exp_erfi_product)
