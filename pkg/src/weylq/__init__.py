"""Exact quasi-polynomial computations for Weyl subarrangements.

Modules
-------
rootsys
    Root systems, Weyl groups, the root poset and its ideals.
quasipoly
    Exact polynomials, quasi-polynomials, shift operators and series.
ehrhart
    Lattice-point counts for the dilated fundamental alcove.
charquasi
    Characteristic quasi-polynomials of congruence arrangements.
eulerian
    Descent statistics over the Weyl group and their polynomials.
compat
    The shift-operator compatibility decision and generating functions.
deform
    Interval deformations of subarrangements and their closed formulas.
cli
    Command line front end.
"""

from weylq.errors import (
    DomainError,
    InconsistencyError,
    ResourceCapError,
    ValidationError,
    WeylqError,
)

__all__ = [
    "DomainError",
    "InconsistencyError",
    "ResourceCapError",
    "ValidationError",
    "WeylqError",
]

__version__ = "0.1.0"
