"""hyperhs: numerical checks of the Hubbard-Stratonovich identity on
real hyperbolic (pseudo-orthogonal) integration domains."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
