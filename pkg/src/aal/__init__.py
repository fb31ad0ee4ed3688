"""Finite-model checks for inconsistency lemmas and excluded-middle laws."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
