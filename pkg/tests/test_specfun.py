import mpmath
import pytest

from hyperhs.specfun import Phi1Params, phi1, phi1_integral, phi1_series


def phi1_reference(alpha, beta, gamma, x, y, terms=120, dps=40):
    """Direct double-series reference in arbitrary precision."""
    with mpmath.workdps(dps):
        x, y = mpmath.mpf(x), mpmath.mpf(y)
        total = mpmath.mpf(0)
        for m in range(terms):
            for n in range(terms - m):
                total += (mpmath.rf(alpha, m + n) * mpmath.rf(beta, m)
                          / (mpmath.rf(gamma, m + n)
                             * mpmath.factorial(m) * mpmath.factorial(n))
                          * x ** m * y ** n)
        return float(total)


def test_limit_2f1():
    p = Phi1Params(1.0, 0.5, 1.5)
    for x in [-0.8, -0.2, 0.4, 0.9]:
        assert phi1(p, x, 0.0) == pytest.approx(
            float(mpmath.hyp2f1(1.0, 0.5, 1.5, x)), rel=1e-9)


def test_limit_1f1():
    p = Phi1Params(1.0, 0.5, 1.5)
    for y in [-30.0, -5.0, -0.5, 0.0, 2.0]:
        assert phi1(p, 0.0, y) == pytest.approx(
            float(mpmath.hyp1f1(1.0, 1.5, y)), rel=1e-9, abs=1e-300)


def test_series_vs_reference():
    for (x, y) in [(0.3, -2.0), (-0.5, 1.0), (0.6, -6.0)]:
        got = phi1_series(1.0, 0.5, 1.5, x, y)
        assert got == pytest.approx(phi1_reference(1.0, 0.5, 1.5, x, y), rel=1e-11)


def test_integral_vs_series_overlap():
    p = Phi1Params(2.0, 0.5, 2.5)
    for (x, y) in [(0.3, -2.0), (0.6, -7.0), (-0.4, -3.0)]:
        assert phi1_integral(p, x, y) == pytest.approx(
            phi1_series(p.alpha, p.beta, p.gamma, x, y), rel=1e-10)


def test_dispatch_regimes_consistent():
    p = Phi1Params(1.0, 0.5, 1.5)
    # deep-negative y forces the integral path; the plain series loses
    # digits there, so compare against the high-precision reference
    # the alternating y powers reach ~1e150 before cancelling, so the
    # reference needs commensurate working precision
    got = phi1(p, 0.3, -20.0)
    ref = phi1_reference(1.0, 0.5, 1.5, 0.3, -20.0, terms=200, dps=200)
    assert got == pytest.approx(ref, rel=1e-8)


def test_param_validation():
    with pytest.raises(ValueError):
        Phi1Params(1.0, 0.5, 0.5)
    with pytest.raises(ValueError):
        phi1(Phi1Params(1.0, 0.5, 1.5), 1.2, 0.0)
