"""spinpoly: lattice polytopes of integer edge weightings of trivalent
graphs, the term-order machinery that governs their toric degenerations, and
desk-scale verification of the associated commutative-algebra statements."""

__version__ = "0.1.0"

from . import catp, cli, errors, graphs, polytopes, termorders, toric  # noqa: F401
