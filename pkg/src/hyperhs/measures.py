"""Volume elements and sign bookkeeping for the spectral integrations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import CosetPoint, LinalgError, Signature


@dataclass(frozen=True)
class Spectrum:
    block1: tuple
    block2: tuple

    def __post_init__(self) -> None:
        b1 = tuple(float(v) for v in self.block1)
        b2 = tuple(float(v) for v in self.block2)
        if not all(math.isfinite(v) for v in b1 + b2):
            raise ValueError("spectrum entries must be finite")
        object.__setattr__(self, "block1", b1)
        object.__setattr__(self, "block2", b2)

    @property
    def signature(self) -> Signature:
        return Signature(len(self.block1), len(self.block2))


@dataclass(frozen=True)
class PolarPoint:
    r: float
    s: float
    angle1: float
    angle2: float


def vandermonde(v: Sequence[float]) -> float:
    """prod_{i<j} (v_i - v_j); empty and singleton inputs give 1."""
    v = list(v)
    out = 1.0
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            out *= v[i] - v[j]
    return out


def _cross_product(p: Spectrum) -> float:
    out = 1.0
    for a in p.block1:
        for b in p.block2:
            out *= a - b
    return out


def ps_density(p: Spectrum) -> float:
    """Signed density |Delta[P1]| |Delta[P2]| prod_{ij} (p_{1i} - p_{2j})."""
    return abs(vandermonde(p.block1)) * abs(vandermonde(p.block2)) * _cross_product(p)


def naive_density(p: Spectrum) -> float:
    """|Delta| of the concatenated spectrum."""
    return abs(vandermonde(p.block1 + p.block2))


def sector_sign(p: Spectrum) -> int:
    """Sign of the cross-block difference product; 0 on any tie."""
    c = _cross_product(p)
    if c > 0:
        return 1
    if c < 0:
        return -1
    return 0


def sector_count(sig: Signature) -> int:
    return math.comb(sig.m + sig.n, sig.m)


def coset_measure_density(zp: CosetPoint) -> float:
    """det(1 -/+ Z^T Z)^{-(m+n)/2}, upper sign hyperbolic."""
    z = zp.z
    m, n = z.shape
    sgn = -1.0 if zp.curvature == "hyperbolic" else 1.0
    g = np.eye(n) + sgn * (z.T @ z)
    det = float(np.linalg.det(g))
    if det <= 0:
        raise LinalgError("coset point outside the hyperbolic domain")
    return det ** (-(m + n) / 2.0)


def polar_jacobian(r: float, s: float) -> float:
    return abs(r * r - s * s)


def _polar_map(coords: np.ndarray) -> np.ndarray:
    r, s, a1, a2 = coords
    c1, s1 = math.cos(a1), math.sin(a1)
    c2, s2 = math.cos(a2), math.sin(a2)
    o1 = np.array([[c1, -s1], [s1, c1]])
    o2 = np.array([[c2, -s2], [s2, c2]])
    return (o1 @ np.diag([r, s]) @ o2).ravel()


def polar_jacobian_fd(pt: PolarPoint, h: float = 1e-6) -> float:
    """|det| of the polar decomposition map by central differences.

    Reference value for polar_jacobian; the map sends (r, s, angle1,
    angle2) to the four matrix entries of O1 diag(r, s) O2.
    """
    x0 = np.array([pt.r, pt.s, pt.angle1, pt.angle2])
    jac = np.empty((4, 4))
    for j in range(4):
        xp, xm = x0.copy(), x0.copy()
        xp[j] += h
        xm[j] -= h
        jac[:, j] = (_polar_map(xp) - _polar_map(xm)) / (2.0 * h)
    return abs(float(np.linalg.det(jac)))


__all__ = [
    "PolarPoint",
    "Spectrum",
    "coset_measure_density",
    "naive_density",
    "polar_jacobian",
    "polar_jacobian_fd",
    "ps_density",
    "sector_count",
    "sector_sign",
    "vandermonde",
]
