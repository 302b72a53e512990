"""Exact linear algebra and relative homology for right Leibniz algebras."""

from .exactlin import GF, QQ, Field, Matrix, Subspace
from .algebra import LeibnizAlgebra, Pair, catalog

__all__ = ["GF", "QQ", "Field", "Matrix", "Subspace", "LeibnizAlgebra", "Pair", "catalog"]
__version__ = "0.1.0"
