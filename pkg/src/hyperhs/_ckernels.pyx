# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the scalar hot kernels.

Twin of `hyperhs._kernels_py`; same functions, same seam constants, same
extended-precision strategy (C long double instead of numpy longdouble).
"""

import numpy as np

cimport cython

cdef extern from *:
    """
    #define HHS_PI_LD 3.141592653589793238462643383279502884L
    """
    long double HHS_PI_LD

cdef extern from "math.h" nogil:
    long double cosl(long double)
    long double sinl(long double)
    long double sqrtl(long double)
    long double fabsl(long double)
    double exp(double)
    double sqrt(double)
    double fabs(double)

BACKEND = "c"

cdef double _J0_SEAM = 15.0
cdef double _ERFI_SEAM = 6.0
cdef double _ERFI_OVERFLOW = 26.6


cdef long double _j0_series(long double x) nogil:
    cdef long double q = -x * x / 4
    cdef long double term = 1.0
    cdef long double acc = 1.0
    cdef int k = 0
    while True:
        k += 1
        term = term * q / (<long double>k * <long double>k)
        acc += term
        if fabsl(term) < 1e-22 * fabsl(acc) or k > 200:
            break
    return acc


cdef long double _j0_hankel(long double x) nogil:
    cdef long double g = 1.0
    cdef long double p = 1.0
    cdef long double q = 0.0
    cdef long double gn, s, w, amp
    cdef int m = 0
    while True:
        m += 1
        gn = g * (<long double>(2 * m - 1)) ** 2 / (8 * <long double>m * x)
        if gn > g and m > 2:
            break
        g = gn
        s = -1.0 if (m // 2) % 2 else 1.0
        if m % 2 == 1:
            q += s * g
        else:
            p += s * g
        if g < 1e-20:
            break
    w = x - HHS_PI_LD / 4
    amp = sqrtl(2.0 / (HHS_PI_LD * x))
    return amp * (cosl(w) * p + sinl(w) * q)


cdef double _j0(double x) nogil:
    cdef long double ax = fabsl(<long double>x)
    if ax < <long double>_J0_SEAM:
        return <double>_j0_series(ax)
    return <double>_j0_hankel(ax)


def bessel_j0(double x):
    return _j0(x)


def bessel_j0_array(x):
    arr = np.abs(np.asarray(x, dtype=np.float64))
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel()
    cdef double[::1] xv = np.ascontiguousarray(flat)
    out_arr = np.empty(flat.shape[0], dtype=np.float64)
    cdef double[::1] ov = out_arr
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _j0(xv[i])
    out_arr = out_arr.reshape(np.atleast_1d(arr).shape)
    return float(out_arr[0]) if scalar else out_arr


cdef double _erfi_asym_scaled(double x) nogil:
    cdef double inv2x2 = 1.0 / (2.0 * x * x)
    cdef double term = 1.0
    cdef double acc = 1.0
    cdef double nxt
    cdef int k = 0
    while True:
        k += 1
        nxt = term * (2 * k - 1) * inv2x2
        if nxt >= term or nxt < 1e-18 * acc:
            if nxt < term:
                acc += nxt
            break
        term = nxt
        acc += term
    return acc / (x * sqrt(<double>HHS_PI_LD))


def erfi(double x):
    cdef double ax = fabs(x)
    cdef double s = 1.0 if x >= 0 else -1.0
    cdef double term, acc, x2, contrib
    cdef int k
    if ax > _ERFI_OVERFLOW:
        raise OverflowError(f"erfi({x}) overflows double precision")
    if ax == 0.0:
        return 0.0
    if ax <= _ERFI_SEAM:
        term = ax
        acc = ax
        x2 = ax * ax
        k = 0
        while True:
            k += 1
            term = term * x2 / k
            contrib = term / (2 * k + 1)
            acc += contrib
            if contrib < 1e-17 * acc:
                break
        return s * (2.0 / sqrt(<double>HHS_PI_LD)) * acc
    return s * exp(ax * ax) * _erfi_asym_scaled(ax)


def exp_erfi_product(double s, double x):
    """e^{-s} * erfi(x), stable when x is large and s ~ x^2."""
    cdef double ax = fabs(x)
    cdef double sgn = 1.0 if x >= 0 else -1.0
    if ax <= _ERFI_SEAM:
        return exp(-s) * erfi(x)
    return sgn * exp(ax * ax - s) * _erfi_asym_scaled(ax)


def phi1_series(double alpha, double beta, double gamma, double x, double y,
                int max_terms=20000):
    """Humbert Phi1 double series summed along anti-diagonals m+n=N."""
    cdef double total, term, diag, ratio_ag
    cdef int k, N, m, n_terms
    if x == 0.0 or y == 0.0:
        total = 1.0
        term = 1.0
        for k in range(max_terms):
            if x == 0.0:
                term *= (alpha + k) * y / ((gamma + k) * (k + 1))
            else:
                term *= (alpha + k) * (beta + k) * x / ((gamma + k) * (k + 1))
            total += term
            if fabs(term) < 1e-16 * fabs(total) and k > 3:
                return total
        raise RuntimeError("phi1 series did not converge within the term budget")

    cdef double[::1] u = np.empty(max_terms + 1, dtype=np.float64)
    cdef double[::1] v = np.empty(max_terms + 1, dtype=np.float64)
    u[0] = 1.0
    v[0] = 1.0
    total = 1.0
    ratio_ag = 1.0
    n_terms = 1
    for N in range(1, max_terms):
        ratio_ag *= (alpha + N - 1) / (gamma + N - 1)
        u[N] = u[N - 1] * (beta + N - 1) * x / N
        v[N] = v[N - 1] * y / N
        diag = 0.0
        for m in range(N + 1):
            diag += u[m] * v[N - m]
        diag *= ratio_ag
        total += diag
        n_terms += N + 1
        if fabs(diag) < 1e-16 * fabs(total) and N > 3:
            return total
        if n_terms > max_terms:
            break
    raise RuntimeError("phi1 series did not converge within the term budget")
