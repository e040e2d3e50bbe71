"""Backend selection for the scalar hot kernels.

The compiled extension `hyperhs._ckernels` is preferred when it imported
cleanly; setting HYPERHS_PURE_PYTHON=1 forces the numpy fallback.  Both
backends implement the same functions and are cross-checked in the tests.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("HYPERHS_PURE_PYTHON", "") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND

bessel_j0 = _impl.bessel_j0
bessel_j0_array = _impl.bessel_j0_array
erfi = _impl.erfi
exp_erfi_product = _impl.exp_erfi_product
phi1_series = _impl.phi1_series

__all__ = [
    "BACKEND",
    "bessel_j0",
    "bessel_j0_array",
    "erfi",
    "exp_erfi_product",
    "phi1_series",
]
