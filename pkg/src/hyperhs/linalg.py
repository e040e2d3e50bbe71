"""Small dense real-matrix helpers: signature matrices, pseudo-orthogonality
checks, and projective coset embeddings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

_PD_TOL = 1e-12


class LinalgError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise LinalgError("signature blocks must be positive")

    @property
    def dim(self) -> int:
        return self.m + self.n


Curvature = Literal["hyperbolic", "spherical"]


@dataclass(frozen=True)
class CosetPoint:
    """Projective coordinate Z (an m x n real matrix) on the coset."""
    z: np.ndarray
    curvature: Curvature = "hyperbolic"

    def __post_init__(self) -> None:
        z = np.atleast_2d(np.asarray(self.z, dtype=float))
        object.__setattr__(self, "z", z)
        if not np.all(np.isfinite(z)):
            raise LinalgError("coset coordinate must be finite")
        if self.curvature not in ("hyperbolic", "spherical"):
            raise LinalgError(f"unknown curvature {self.curvature!r}")
        if self.curvature == "hyperbolic":
            g = np.eye(z.shape[1]) - z.T @ z
            if np.linalg.eigvalsh(g).min() <= _PD_TOL:
                raise LinalgError("1 - Z^T Z is not positive definite")

    @property
    def signature(self) -> Signature:
        return Signature(self.z.shape[0], self.z.shape[1])


def signature_matrix(sig: Signature) -> np.ndarray:
    """diag(+1 x m, -1 x n)."""
    return np.diag(np.concatenate([np.ones(sig.m), -np.ones(sig.n)]))


def is_pseudo_orthogonal(t: np.ndarray, sig: Signature,
                         tol: float = 1e-12) -> bool:
    t = np.asarray(t, dtype=float)
    if t.shape != (sig.dim, sig.dim):
        raise LinalgError(f"expected a {sig.dim}x{sig.dim} matrix, got {t.shape}")
    ell = signature_matrix(sig)
    return bool(np.max(np.abs(t.T @ ell @ t - ell)) < tol)


def _inv_sqrt_sym(a: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(a)
    if w.min() <= _PD_TOL:
        raise LinalgError("matrix is not positive definite")
    return (v / np.sqrt(w)) @ v.T


def coset_embed(zp: CosetPoint) -> np.ndarray:
    """Block embedding S(Z) of a coset point into the group.

    Diagonal blocks (1 -/+ Z Z^T)^{-1/2} and (1 -/+ Z^T Z)^{-1/2}, off-diagonal
    blocks Z(1 -/+ Z^T Z)^{-1/2} and its transpose partner; the upper sign is the
    hyperbolic case.  Satisfies S(-Z) = S(Z)^{-1}.
    """
    z = zp.z
    m, n = z.shape
    sgn = -1.0 if zp.curvature == "hyperbolic" else 1.0
    gtop = np.eye(m) + sgn * (z @ z.T)
    gbot = np.eye(n) + sgn * (z.T @ z)
    itop = _inv_sqrt_sym(gtop)
    ibot = _inv_sqrt_sym(gbot)
    s = np.empty((m + n, m + n))
    s[:m, :m] = itop
    s[m:, m:] = ibot
    s[:m, m:] = z @ ibot
    s[m:, :m] = -sgn * (z.T @ itop)
    return s


def conjugated_trace(s: np.ndarray, p: Sequence[float],
                     a_diag: Sequence[float]) -> float:
    """Tr(S^{-1} diag(p) S diag(a)) for an invertible S."""
    s = np.asarray(s, dtype=float)
    p = np.asarray(p, dtype=float)
    a = np.asarray(a_diag, dtype=float)
    d = s.shape[0]
    if s.shape != (d, d) or p.shape != (d,) or a.shape != (d,):
        raise LinalgError("dimension mismatch in conjugated_trace")
    if abs(np.linalg.det(s)) < 1e-300:
        raise LinalgError("singular conjugation matrix")
    sinv = np.linalg.inv(s)
    r = sinv @ np.diag(p) @ s
    return float(np.sum(np.diag(r) * a))


__all__ = [
    "CosetPoint",
    "LinalgError",
    "Signature",
    "conjugated_trace",
    "coset_embed",
    "is_pseudo_orthogonal",
    "signature_matrix",
]
