"""Pure-Python (numpy) implementations of the scalar hot kernels.

This module mirrors the compiled extension `hyperhs._ckernels`; the public
package selects one of the two at import time (see `hyperhs.kernels`).
All functions accept floats and return floats; `bessel_j0_array` is the
vectorised variant used inside quadrature loops.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

# Series/asymptotic switch points.  The J0 seam sits where the extended
# precision power series and the optimally-truncated Hankel expansion are
# both below ~1e-13 absolute.
_J0_SEAM = 15.0
_ERFI_SEAM = 6.0
_ERFI_OVERFLOW = 26.6

_LD = np.longdouble


def _j0_series(x: float) -> float:
    # sum_k (-x^2/4)^k / (k!)^2 in extended precision; the cancellation for
    # x near the seam would cost ~5 digits in plain doubles
    q = -_LD(x) * _LD(x) / 4
    term = _LD(1.0)
    acc = _LD(1.0)
    k = 0
    while True:
        k += 1
        term = term * q / (_LD(k) * _LD(k))
        acc += term
        if abs(term) < _LD(1e-22) * abs(acc) or k > 200:
            break
    return float(acc)


def _j0_hankel(x: float) -> float:
    # DLMF 10.17.3 with nu=0, optimally truncated; g_m = g_{m-1}(2m-1)^2/(8mx)
    xl = _LD(x)
    g = _LD(1.0)
    p = _LD(1.0)
    q = _LD(0.0)
    m = 0
    while True:
        m += 1
        gn = g * _LD(2 * m - 1) ** 2 / (8 * _LD(m) * xl)
        if gn > g and m > 2:
            break
        g = gn
        s = _LD(-1.0) ** ((m // 2) % 2)
        if m % 2 == 1:
            q += s * g
        else:
            p += s * g
        if g < _LD(1e-20):
            break
    w = xl - _LD(math.pi) / 4
    amp = np.sqrt(_LD(2.0) / (_LD(math.pi) * xl))
    return float(amp * (np.cos(w) * p + np.sin(w) * q))


def bessel_j0(x: float) -> float:
    x = abs(float(x))
    if x < _J0_SEAM:
        return _j0_series(x)
    return _j0_hankel(x)


_HANKEL_TERMS = 25


def bessel_j0_array(x: np.ndarray) -> np.ndarray:
    x = np.abs(np.asarray(x, dtype=float))
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    lo = x < _J0_SEAM
    if lo.any():
        xl = x[lo].astype(_LD)
        q = -xl * xl / 4
        term = np.ones_like(xl)
        acc = np.ones_like(xl)
        for k in range(1, 45):
            term = term * q / (_LD(k) * _LD(k))
            acc += term
        out[lo] = acc.astype(float)
    hi = ~lo
    if hi.any():
        xh = x[hi].astype(_LD)
        g = np.ones_like(xh)
        p = np.ones_like(xh)
        qs = np.zeros_like(xh)
        for m in range(1, _HANKEL_TERMS):
            g = g * _LD(2 * m - 1) ** 2 / (8 * _LD(m) * xh)
            s = -1.0 if (m // 2) % 2 else 1.0
            if m % 2 == 1:
                qs += s * g
            else:
                p += s * g
        w = xh - _LD(math.pi) / 4
        amp = np.sqrt(_LD(2.0) / (_LD(math.pi) * xh))
        out[hi] = (amp * (np.cos(w) * p + np.sin(w) * qs)).astype(float)
    return out[0] if scalar else out


def erfi(x: float) -> float:
    ax = abs(float(x))
    s = 1.0 if x >= 0 else -1.0
    if ax > _ERFI_OVERFLOW:
        raise OverflowError(f"erfi({x}) overflows double precision")
    if ax == 0.0:
        return 0.0
    if ax <= _ERFI_SEAM:
        # all-positive series, no cancellation
        term = ax
        acc = ax
        k = 0
        x2 = ax * ax
        while True:
            k += 1
            term = term * x2 / k
            acc += term / (2 * k + 1)
            if term / (2 * k + 1) < 1e-17 * acc:
                break
        return s * (2.0 / math.sqrt(math.pi)) * acc
    return s * math.exp(ax * ax) * _erfi_asym_scaled(ax)


def _erfi_asym_scaled(x: float) -> float:
    # erfi(x) * e^{-x^2} for large x: (1/(x sqrt(pi))) sum (2k-1)!!/(2x^2)^k
    inv2x2 = 1.0 / (2.0 * x * x)
    term = 1.0
    acc = 1.0
    k = 0
    while True:
        k += 1
        nxt = term * (2 * k - 1) * inv2x2
        if nxt >= term or nxt < 1e-18 * acc:
            if nxt < term:
                acc += nxt
            break
        term = nxt
        acc += term
    return acc / (x * math.sqrt(math.pi))


def exp_erfi_product(s: float, x: float) -> float:
    """e^{-s} * erfi(x), stable when x is large and s ~ x^2."""
    ax = abs(float(x))
    sgn = 1.0 if x >= 0 else -1.0
    if ax <= _ERFI_SEAM:
        return math.exp(-s) * erfi(x)
    return sgn * math.exp(ax * ax - s) * _erfi_asym_scaled(ax)


def phi1_series(alpha: float, beta: float, gamma: float, x: float, y: float,
                max_terms: int = 20000) -> float:
    """Humbert Phi1 double series summed along anti-diagonals m+n=N.

    Term (N,m) = (alpha)_N/(gamma)_N * [(beta)_m x^m/m!] * [y^(N-m)/(N-m)!];
    the bracketed factors are cached so no term requires dividing by x or y.
    Terminates when a full anti-diagonal contributes < 1e-16 of the sum.
    Raises RuntimeError if max_terms is exhausted.
    """
    if x == 0.0 or y == 0.0:
        # collapses to 1F1(alpha;gamma;y) resp. 2F1(alpha,beta;gamma;x)
        total = 1.0
        term = 1.0
        for k in range(max_terms):
            if x == 0.0:
                term *= (alpha + k) * y / ((gamma + k) * (k + 1))
            else:
                term *= (alpha + k) * (beta + k) * x / ((gamma + k) * (k + 1))
            total += term
            if abs(term) < 1e-16 * abs(total) and k > 3:
                return total
        raise RuntimeError("phi1 series did not converge within the term budget")

    total = 1.0
    u = [1.0]   # u[m] = (beta)_m x^m / m!
    v = [1.0]   # v[j] = y^j / j!
    ratio_ag = 1.0  # (alpha)_N / (gamma)_N
    n_terms = 1
    for N in range(1, max_terms):
        ratio_ag *= (alpha + N - 1) / (gamma + N - 1)
        u.append(u[-1] * (beta + N - 1) * x / N)
        v.append(v[-1] * y / N)
        diag = 0.0
        for m in range(N + 1):
            diag += u[m] * v[N - m]
        diag *= ratio_ag
        total += diag
        n_terms += N + 1
        if abs(diag) < 1e-16 * abs(total) and N > 3:
            return total
        if n_terms > max_terms:
            break
    raise RuntimeError("phi1 series did not converge within the term budget")
