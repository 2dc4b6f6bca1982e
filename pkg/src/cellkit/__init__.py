"""Exact Kazhdan-Lusztig cells, the asymptotic ring, and constructible
representations for finite Coxeter groups with unequal parameters."""

__version__ = "0.1.0"

from ._kernels import backend_name

__all__ = ["backend_name", "__version__"]
