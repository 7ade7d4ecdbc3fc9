"""Bounds and certificates for the Perron-Frobenius degree of Perron numbers.

Submodules: algebra (polynomials, certified roots, number fields), classify
(Perron / biPerron analysis and the angle lower bound), families (the cubic
and degree-6 biPerron generators), realize (matrix realizations and lattice
points), geometry (invariant polygons), verify (end-to-end suite), service
and cli (HTTP and command-line front ends).
"""

from .algebra import ConjugateSet, IntPolynomial, parse_poly, roots
from .classify import PerronAnalysis, analyze, theorem1_bound
from .errors import ToolkitError
from .families import CubicFamily, generate_cubic, to_biperron, verify_claims
from .geometry import Multiplier, Polygon, hull_orbit_polygon, min_sides_bound
from .realize import (
    IntMatrix,
    Realization,
    lind_points,
    quadratic_realize,
    search_realization,
    trace_obstruction,
)

__version__ = "0.1.0"

__all__ = [
    "ConjugateSet",
    "CubicFamily",
    "IntMatrix",
    "IntPolynomial",
    "Multiplier",
    "PerronAnalysis",
    "Polygon",
    "Realization",
    "ToolkitError",
    "analyze",
    "generate_cubic",
    "hull_orbit_polygon",
    "lind_points",
    "min_sides_bound",
    "parse_poly",
    "quadratic_realize",
    "roots",
    "search_realization",
    "theorem1_bound",
    "to_biperron",
    "trace_obstruction",
    "verify_claims",
]
