"""Brute-force ground truth.

Everything here works by exhaustive enumeration (points, orders, orbits,
character sums) and deliberately avoids the closed-form criteria it is used to
check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .curve import Curve, Point
from .errors import FieldTooLarge, NoDecomposition
from .ff import FieldCtx, make_field

MAX_P_DEGREE1 = 10_000
MAX_P_DEGREE2 = 300
MAX_P_CENSUS = 100


@dataclass(frozen=True)
class GroupStructure:
    """E(F_p) = Z/n1 x Z/n2 with n2 | n1."""

    n1: int
    n2: int

    @property
    def order(self) -> int:
        return self.n1 * self.n2


@dataclass(frozen=True)
class CmDecomposition:
    """4p = A^2 + 27 B^2 with A = 1 mod 3."""

    A: int
    B: int


@dataclass(frozen=True)
class StableSubgroup:
    """A Frobenius-stable subgroup {O, P, -P} of order 3.

    ``abscissa`` is the x-coordinate in F_p (stable subgroups always have
    one); ``generator`` is P with coordinates in F_{p^2}.
    """

    abscissa: int
    pointwise_rational: bool
    generator: tuple


def _check_bound(p: int, degree: int) -> None:
    bound = MAX_P_DEGREE1 if degree == 1 else MAX_P_DEGREE2
    if p > bound:
        raise FieldTooLarge(f"p = {p} exceeds the degree-{degree} enumeration bound {bound}")


@lru_cache(maxsize=8)
def _square_table(p: int, degree: int) -> dict:
    """Map each square of F_p (or F_{p^2}) to the list of its square roots."""
    table: dict = {}
    if degree == 1:
        for y in range(p):
            table.setdefault(y * y % p, []).append(y)
    else:
        K = make_field(p).ext
        for z in K.elements():
            table.setdefault(K.mul(z, z), []).append(z)
    return table


def _points_fp(E: Curve) -> list[Point]:
    p = E.p
    a1, a2, a3, a4, a6 = E.coeffs
    squares = _square_table(p, 1)
    half = pow(2, -1, p)
    pts: list[Point] = [None]
    for x in range(p):
        # (2y + a1 x + a3)^2 = 4 rhs + (a1 x + a3)^2
        lin = (a1 * x + a3) % p
        disc = (4 * (x * x * x + a2 * x * x + a4 * x + a6) + lin * lin) % p
        for s in squares.get(disc, ()):
            pts.append((x, (s - lin) * half % p))
    return pts


def _points_fp2(E: Curve) -> list[Point]:
    K = E.ctx.ext
    p = E.p
    a1, a2, a3, a4, a6 = (K.embed(c) for c in E.coeffs)
    squares = _square_table(p, 2)
    half = K.embed(pow(2, -1, p))
    four = K.embed(4)
    pts: list[Point] = [None]
    for x in K.elements():
        lin = K.add(K.mul(a1, x), a3)
        rhs = K.add(K.mul(K.mul(x, x), K.add(x, a2)), K.add(K.mul(a4, x), a6))
        disc = K.add(K.mul(four, rhs), K.mul(lin, lin))
        for s in squares.get(disc, ()):
            pts.append((x, K.mul(K.sub(s, lin), half)))
    return pts


def points(E: Curve, extension_degree: int = 1) -> list[Point]:
    """All points of E over F_p (degree 1) or F_{p^2} (degree 2), infinity first."""
    if extension_degree not in (1, 2):
        raise ValueError("extension_degree must be 1 or 2")
    _check_bound(E.p, extension_degree)
    if extension_degree == 1:
        return _points_fp(E)
    return _points_fp2(E)


def count_points(E: Curve, extension_degree: int = 1) -> int:
    return len(points(E, extension_degree))


def trace(E: Curve) -> int:
    return E.p + 1 - count_points(E)


def group_structure(E: Curve) -> GroupStructure:
    pts = points(E)
    n = len(pts)
    exponent = 1
    for P in pts:
        exponent = math.lcm(exponent, E.order(P, n))
        if exponent == n:
            break
    return GroupStructure(exponent, n // exponent)


def rational_3torsion(E: Curve) -> list[Point]:
    """F_p-points P with 3P = O (infinity included)."""
    return [P for P in points(E) if E.mul(3, P) is None]


def stable_order3_subgroups(E: Curve) -> list[StableSubgroup]:
    """Frobenius-stable order-3 subgroups, found among the points of E(F_{p^2})."""
    K = E.ctx.ext
    found: dict = {}
    for P in points(E, 2):
        if P is None or E.mul(3, P) is not None:
            continue
        negP = E.neg(P)
        key = min(P, negP)
        if key in found:
            continue
        frobP = (K.conj(P[0]), K.conj(P[1]))
        if frobP != P and frobP != negP:
            found[key] = None
            continue
        rational = P[0].is_base() and P[1].is_base()
        found[key] = StableSubgroup(P[0].c0, rational, key)
    subs = [s for s in found.values() if s is not None]
    return sorted(subs, key=lambda s: (s.abscissa, s.generator))


def fermat_cubic_count(ctx: FieldCtx, rhs: int = 1) -> int:
    """#{(x, y) in F_p^2 : x^3 + y^3 = rhs}."""
    p = ctx.p
    cubes = [pow(x, 3, p) for x in range(p)]
    tally: dict[int, int] = {}
    for c in cubes:
        tally[c] = tally.get(c, 0) + 1
    return sum(tally.get((rhs - c) % p, 0) for c in cubes)


def noncube_pair_count(ctx: FieldCtx) -> int:
    """#{(x, y) : x^3 + y^3 is not a cube}, with 0 counted as a cube."""
    p = ctx.p
    cubeset = {pow(x, 3, p) for x in range(p)}
    cubes = [pow(x, 3, p) for x in range(p)]
    return sum(1 for a in cubes for b in cubes if (a + b) % p not in cubeset)


def cm_decompose(ctx: FieldCtx) -> CmDecomposition:
    p = ctx.p
    for B in range(math.isqrt(4 * p // 27) + 1):
        rest = 4 * p - 27 * B * B
        A = math.isqrt(rest)
        if A * A == rest:
            return CmDecomposition(A if A % 3 == 1 else -A, B)
    raise NoDecomposition(f"4*{p} is not of the form A^2 + 27B^2 (needs p = 1 mod 3)")


# -- census ------------------------------------------------------------------


@dataclass
class IsoClass:
    representative: tuple[int, int]
    size: int
    members: list[tuple[int, int]] = field(repr=False)
    report: object = None


def short_iso_classes(ctx: FieldCtx) -> list[IsoClass]:
    """Partition nonsingular (A, B) into orbits of (A, B) -> (u^4 A, u^6 B)."""
    p = ctx.p
    seen = set()
    classes = []
    for A in range(p):
        for B in range(p):
            if (4 * A**3 + 27 * B * B) % p == 0 or (A, B) in seen:
                continue
            orbit = sorted({(pow(u, 4, p) * A % p, pow(u, 6, p) * B % p) for u in range(1, p)})
            seen.update(orbit)
            classes.append(IsoClass(orbit[0], len(orbit), orbit))
    return classes


PREDICATES: dict[str, Callable] = {
    "all": lambda r: True,
    "3|#E": lambda r: r.point_count % 3 == 0,
    "cyclic": lambda r: r.rational_3torsion_order == 3,
    "full": lambda r: r.rational_3torsion_order == 9,
    "twist-cyclic": lambda r: r.nonpointwise_count == 1,
    "twist-full": lambda r: r.nonpointwise_count == 4,
    "stable-nonpointwise": lambda r: r.nonpointwise_count > 0,
}


def census(ctx: FieldCtx, predicate: str | Callable = "all") -> list[IsoClass]:
    """Isomorphism classes of curves over F_p whose report satisfies ``predicate``."""
    from .torsion3 import classify

    if ctx.p > MAX_P_CENSUS:
        raise FieldTooLarge(f"census limited to p <= {MAX_P_CENSUS}")
    pred = PREDICATES[predicate] if isinstance(predicate, str) else predicate
    out = []
    for cls in short_iso_classes(ctx):
        cls.report = classify(Curve.short(ctx, *cls.representative))
        if pred(cls.report):
            out.append(cls)
    return out


def class_index(classes: list[IsoClass]) -> dict[tuple[int, int], int]:
    return {m: i for i, c in enumerate(classes) for m in c.members}
