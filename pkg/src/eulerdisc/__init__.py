"""Exact combinatorics of sparse discriminants.

Mixed volumes and moments of lattice polytopes, tropical stable
intersections, essential facings, Milnor numbers, Euler-discriminant
divisors, their degrees and Newton polytopes (mixed secondary / mixed fiber
polytopes).  All arithmetic is exact; there is no floating point anywhere in
the computational core.
"""

from .errors import ContradictionError, DegenerateOffsetError, EulerdiscError, SchemaError

__all__ = [
    "ContradictionError",
    "DegenerateOffsetError",
    "EulerdiscError",
    "SchemaError",
]

__version__ = "0.1.0"
