"""Elliptic curves over prime fields, sorted by their order-3 subgroups.

Submodules
----------
ff           F_p and F_{p^2} arithmetic, quadratic and cubic characters
poly         polynomials over F_p, factorization patterns, division polynomials
curve        Weierstrass curves, group law, isomorphisms and twists
torsion3     normal-form families, G_a orbits, the quartic criterion, classify
oracle       brute-force point counts, subgroups and isomorphism census
conformance  closed forms checked against the oracle, prime by prime
"""

from .curve import INFINITY, Curve, IsoWitness, are_isomorphic, quadratic_twist, to_short
from .errors import Ec3Error
from .ff import CubicClass, FieldCtx, QuadExt, QuadExtElement, make_field
from .poly import Poly, division_polynomial, factor_pattern
from .torsion3 import FamilyCoords, FamilyKind, Torsion3Report, classify

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "Curve",
    "IsoWitness",
    "are_isomorphic",
    "quadratic_twist",
    "to_short",
    "Ec3Error",
    "CubicClass",
    "FieldCtx",
    "QuadExt",
    "QuadExtElement",
    "make_field",
    "Poly",
    "division_polynomial",
    "factor_pattern",
    "FamilyCoords",
    "FamilyKind",
    "Torsion3Report",
    "classify",
]
