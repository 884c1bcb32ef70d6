"""Exact computations with Lie algebras in the category of k[d]/d²-modules over
characteristic 2."""
from __future__ import annotations

__version__ = "0.1.0"
