"""Special functions used by the reduced integral formulas.

Public wrappers over the kernel backend, plus the Humbert Phi1 confluent
hypergeometric of two variables with automatic switching between its double
power series and an Euler-type integral representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kernels import (  # noqa: F401  (re-exported)
    BACKEND,
    bessel_j0,
    bessel_j0_array,
    erfi,
    exp_erfi_product,
    phi1_series,
)
from .quadrature import QuadConfig, integrate_1d

# The series loses relative accuracy once e^{y} has to emerge from
# cancelling terms of size ~1, and converges slowly as x -> 1; past these
# thresholds the integral representation is both faster and more accurate.
_PHI1_Y_SWITCH = -8.0
_PHI1_X_SWITCH = 0.75


@dataclass(frozen=True)
class Phi1Params:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if not (self.gamma > self.alpha > 0):
            raise ValueError("phi1 requires gamma > alpha > 0")


def phi1_integral(params: Phi1Params, x: float, y: float,
                  rel_tol: float = 1e-12) -> float:
    """Phi1 via its Euler integral, valid for gamma > alpha > 0 and x < 1.

    The substitution u = sin^2(theta) absorbs both endpoint singularities
    for alpha >= 1/2 and gamma - alpha >= 1/2.
    """
    a, b, g = params.alpha, params.beta, params.gamma
    if x >= 1.0:
        raise ValueError("phi1_integral requires x < 1")
    pref = math.gamma(g) / (math.gamma(a) * math.gamma(g - a))

    def f(theta: float) -> float:
        s = math.sin(theta)
        c = math.cos(theta)
        u = s * s
        val = 2.0 * s ** (2 * a - 1) * c ** (2 * g - 2 * a - 1)
        return val * (1.0 - x * u) ** (-b) * math.exp(y * u)

    cfg = QuadConfig(rel_tol=rel_tol, abs_tol=1e-300)
    r = integrate_1d(f, 0.0, math.pi / 2, cfg)
    return pref * r.value.real


def phi1(params: Phi1Params, x: float, y: float) -> float:
    """Humbert Phi1(alpha, beta; gamma; x, y) for |x| < 1 and real y."""
    if abs(x) >= 1.0:
        raise ValueError("phi1 requires |x| < 1")
    usable = params.alpha >= 0.5 and params.gamma - params.alpha >= 0.5
    if usable and (y < _PHI1_Y_SWITCH or x > _PHI1_X_SWITCH):
        return phi1_integral(params, x, y)
    return phi1_series(params.alpha, params.beta, params.gamma, x, y)


__all__ = [
    "BACKEND",
    "Phi1Params",
    "bessel_j0",
    "bessel_j0_array",
    "erfi",
    "exp_erfi_product",
    "phi1",
    "phi1_integral",
    "phi1_series",
]
