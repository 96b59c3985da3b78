"""Exact toolkit for singularity-category dimension bounds of hypersurfaces."""

from .poly import GF, QQ, DEGREVLEX, LEX, Field, MonomialOrder, PolyRing, Polynomial

__version__ = "0.1.0"

__all__ = ["GF", "QQ", "DEGREVLEX", "LEX", "Field", "MonomialOrder", "PolyRing", "Polynomial"]
