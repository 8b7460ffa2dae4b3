"""Exact symbolic engine for elliptic Drinfeld associators.

Everything is computed over the rationals with hard degree truncation:
free Lie algebras in the Lyndon basis, presented graded algebras and their
truncated enveloping algebras, a degree-by-degree pentagon/hexagon solver,
the elliptic pair (X, Y) built from an associator, and finite-degree slices
of Jacobi diagram spaces over n upward strands.
"""

from ellassoc.errors import InvalidArgumentError, LoadError, SolverError

__version__ = "0.1.0"

__all__ = ["InvalidArgumentError", "LoadError", "SolverError", "__version__"]
