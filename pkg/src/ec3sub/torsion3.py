"""Curves with a rational subgroup of order three.

Normal forms
------------
* ``E^i_a : y^2 + a xy + b0^i y = x^3`` -- every curve with an F_p-point of
  order 3 is isomorphic to one of these (``i = 0`` always when p = 2 mod 3).
* ``E_a : y^2 + (3a - 1) xy + a(rho - 1)(a - (rho + 1)/3) y = x^3`` -- the
  curves whose whole 3-torsion is rational (p = 1 mod 3 only).

Quadratic twists of both families give the curves whose stable order-3
subgroups have no F_p-points besides O.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle
from .curve import Curve, IsoWitness, are_isomorphic, quadratic_twist, to_short, translate_to_origin
from .errors import ExcludedParameter, SingularCurve, WrongFieldClass
from .ff import CubicClass, FieldCtx
from .poly import factor_pattern, monic_3div


class FamilyKind(enum.Enum):
    CYCLIC = "cyclic"  # E^i_a
    NONCYCLIC = "noncyclic"  # E_a
    TWIST_CYCLIC = "twist-cyclic"
    TWIST_NONCYCLIC = "twist-noncyclic"


@dataclass(frozen=True)
class FamilyCoords:
    a: int
    i: int
    kind: FamilyKind

    def to_dict(self) -> dict:
        return {"a": self.a, "i": self.i, "kind": self.kind.value}


# -- the E^i_a family --------------------------------------------------------


def family_curve(ctx: FieldCtx, a: int, i: int = 0, check: bool = True) -> Curve:
    if i not in (0, 1, 2) or (i and ctx.b0 is None):
        raise ValueError(f"exponent i = {i} not available for p = {ctx.p}")
    b = pow(ctx.b0, i, ctx.p) if i else 1
    if check:
        return Curve.general(ctx, a, 0, b, 0, 0)
    return Curve(ctx, a, 0, b, 0, 0)


def rho_orbit(ctx: FieldCtx, a: int) -> list[int]:
    """{a, rho a, rho^2 a}; just [a] when p = 2 mod 3."""
    p = ctx.p
    if ctx.rho is None:
        return [a % p]
    return sorted({a % p, a * ctx.rho % p, a * ctx.rho**2 % p})


def m_a(ctx: FieldCtx, a: int, reading: str = "rho-orbit") -> int:
    """Canonical orbit representative (smallest residue).

    ``reading="printed"`` uses the set {a, rho a, (rho + 1) a} instead of the
    rho-orbit; it is kept only so the two readings can be compared.
    """
    p = ctx.p
    if ctx.rho is None:
        return a % p
    if reading == "printed":
        return min(a % p, a * ctx.rho % p, a * (ctx.rho + 1) % p)
    return min(rho_orbit(ctx, a))


def is_cyclic(ctx: FieldCtx, a: int, i: int = 0) -> bool:
    """Whether E^i_a has exactly three F_p-points killed by 3."""
    p = ctx.p
    b = pow(ctx.b0, i, p) if i else 1
    if (a**3 - 27 * b) % p == 0:
        raise SingularCurve(f"a^3 = 27 b0^{i} for a = {a}")
    if ctx.rho is None:
        return True
    return ctx.chi(27 * b - a**3) is not CubicClass.ONE


def reduce_to_family(E: Curve, P) -> tuple[FamilyCoords, IsoWitness]:
    """Coordinates (a, i) with E isomorphic to E^i_a, P going to (0, 0)."""
    if E.discriminant == 0:
        raise SingularCurve(str(E))
    ctx, p = E.ctx, E.p
    T, W = translate_to_origin(E, P)
    b = T.a3
    cls = ctx.chi(b)
    i = {CubicClass.ONE: 0, CubicClass.RHO: 1, CubicClass.RHO_SQ: 2}[cls]
    target = pow(ctx.b0, i, p) if i else 1
    best = None
    for u in ctx.cube_roots(b * pow(target, -1, p)):
        a = T.a1 * pow(u, -1, p) % p
        if best is None or a < best[0]:
            best = (a, u)
    a, u = best
    return FamilyCoords(a, i, FamilyKind.CYCLIC), W.then(IsoWitness(u), p)


def cyclic_representatives(ctx: FieldCtx, reading: str = "rho-orbit") -> list[FamilyCoords]:
    """One E^i_a per isomorphism class with cyclic rational 3-torsion, sorted by (i, a)."""
    p = ctx.p
    exps = (0,) if ctx.rho is None else (0, 1, 2)
    out = []
    for i in exps:
        b = pow(ctx.b0, i, p) if i else 1
        for a in range(p):
            if (a**3 - 27 * b) % p == 0:
                continue
            if is_cyclic(ctx, a, i) and m_a(ctx, a, reading) == a:
                out.append(FamilyCoords(a, i, FamilyKind.CYCLIC))
    return out


def skipped_singular(ctx: FieldCtx) -> list[tuple[int, int]]:
    """(a, i) pairs left out of the E^i_a family because a^3 = 27 b0^i."""
    p = ctx.p
    exps = (0,) if ctx.rho is None else (0, 1, 2)
    return [
        (a, i)
        for i in exps
        for a in range(p)
        if (a**3 - 27 * (pow(ctx.b0, i, p) if i else 1)) % p == 0
    ]


# -- the E_a family ----------------------------------------------------------------


def excluded_parameters(ctx: FieldCtx) -> list[int]:
    """{0, rho/3, (rho + 1)/3}: the singular members of E_a."""
    ctx.require_class(1)
    p, rho = ctx.p, ctx.rho
    third = pow(3, -1, p)
    return sorted({0, rho * third % p, (rho + 1) * third % p})


def noncyclic_domain(ctx: FieldCtx) -> list[int]:
    bad = set(excluded_parameters(ctx))
    return [a for a in range(ctx.p) if a not in bad]


def noncyclic_coeffs(ctx: FieldCtx, a: int) -> tuple[int, int]:
    p, rho = ctx.p, ctx.rho
    third = pow(3, -1, p)
    a1 = (3 * a - 1) % p
    a3 = a * (rho - 1) * (a - (rho + 1) * third) % p
    return a1, a3


def noncyclic_curve(ctx: FieldCtx, a: int) -> Curve:
    if ctx.rho is None:
        raise WrongFieldClass("E_a needs p = 1 mod 3")
    if a % ctx.p in excluded_parameters(ctx):
        raise ExcludedParameter(f"a = {a} gives a singular E_a over F_{ctx.p}")
    a1, a3 = noncyclic_coeffs(ctx, a)
    return Curve.general(ctx, a1, 0, a3, 0, 0)


# Each map of G_a as a fractional-linear (m0 x + m1) / (m2 x + m3), written in rho.
GA_LABELS = (
    "a",
    "a(1+rho)/(3a-rho)",
    "a rho/(3a-1-rho)",
    "-1/(9a)",
    "-(1+rho)(3a-1-rho)/3",
    "rho(3a-rho)/(9a)",
    "rho(3a-1-rho)/(3(3a-rho))",
    "-rho/(3(3a-1-rho))",
    "(1+rho)(3a-rho)/(3(3a-1-rho))",
    "(1+rho)(3a-1-rho)/(9a)",
    "(1+rho)/(3(3a-rho))",
    "rho(3a-rho)/3",
)


def ga_matrices(ctx: FieldCtx) -> list[tuple[int, int, int, int]]:
    ctx.require_class(1)
    p, r = ctx.p, ctx.rho
    s = 1 + r
    mats = [
        (1, 0, 0, 1),
        (s, 0, 3, -r),
        (r, 0, 3, -s),
        (0, -1, 9, 0),
        (-3 * s, s * s, 0, 3),
        (3 * r, -r * r, 9, 0),
        (3 * r, -r * s, 9, -3 * r),
        (0, -r, 9, -3 * s),
        (3 * s, -r * s, 9, -3 * s),
        (3 * s, -s * s, 9, 0),
        (0, s, 9, -3 * r),
        (3 * r, -r * r, 0, 3),
    ]
    return [tuple(c % p for c in m) for m in mats]


def _moebius(m, x: int, p: int) -> int | None:
    den = (m[2] * x + m[3]) % p
    if den == 0:
        return None
    return (m[0] * x + m[1]) * pow(den, -1, p) % p


@dataclass(frozen=True)
class GaImage:
    index: int
    label: str
    value: int | None  # None when the denominator vanishes
    valid: bool  # value lies in the parameter domain


def ga_action(ctx: FieldCtx, a: int) -> list[GaImage]:
    """The twelve images of a under G_a, flagged by domain membership."""
    bad = set(excluded_parameters(ctx))
    if a % ctx.p in bad:
        raise ExcludedParameter(f"a = {a} is excluded")
    out = []
    for k, m in enumerate(ga_matrices(ctx)):
        v = _moebius(m, a, ctx.p)
        out.append(GaImage(k, GA_LABELS[k], v, v is not None and v not in bad))
    return out


def ga_orbit(ctx: FieldCtx, a: int) -> list[int]:
    return sorted({g.value for g in ga_action(ctx, a) if g.valid})


def ga_orbits(ctx: FieldCtx) -> list[list[int]]:
    """Orbits of G_a on the parameter domain, found by closure."""
    seen: set[int] = set()
    orbits = []
    for a in noncyclic_domain(ctx):
        if a in seen:
            continue
        orbit, stack = set(), [a]
        while stack:
            x = stack.pop()
            if x in orbit:
                continue
            orbit.add(x)
            stack.extend(g.value for g in ga_action(ctx, x) if g.valid)
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def _projective(m, p: int):
    lead = next(c for c in m if c % p)
    inv = pow(lead, -1, p)
    return tuple(c * inv % p for c in m)


def _compose(m, n, p: int):
    return _projective(
        (
            m[0] * n[0] + m[1] * n[2],
            m[0] * n[1] + m[1] * n[3],
            m[2] * n[0] + m[3] * n[2],
            m[2] * n[1] + m[3] * n[3],
        ),
        p,
    )


@dataclass(frozen=True)
class GroupSummary:
    order: int
    closed: bool
    abelian: bool
    element_orders: dict[int, int]

    @property
    def name(self) -> str:
        if not self.closed:
            return "not a group"
        if self.order == 12 and self.element_orders == {1: 1, 2: 3, 3: 8}:
            return "A4"
        if self.order == 12 and self.abelian and self.element_orders == {1: 1, 2: 3, 3: 2, 6: 6}:
            return "Z/2 x Z/6"
        return f"order {self.order}"


def ga_group_structure(ctx: FieldCtx) -> GroupSummary:
    """Multiplication table of the twelve maps taken as elements of PGL_2(F_p)."""
    p = ctx.p
    G = [_projective(m, p) for m in ga_matrices(ctx)]
    elems = set(G)
    closed = all(_compose(g, h, p) in elems for g in G for h in G)
    abelian = all(_compose(g, h, p) == _compose(h, g, p) for g in G for h in G)
    ident = _projective((1, 0, 0, 1), p)
    orders: dict[int, int] = {}
    for g in elems:
        k, h = 1, g
        while h != ident and k <= 24:
            h = _compose(h, g, p)
            k += 1
        orders[k] = orders.get(k, 0) + 1
    return GroupSummary(len(elems), closed, abelian, dict(sorted(orders.items())))


# fixed points of each non-identity map as tabulated alongside the Burnside count
def _tabulated_fixed_points(ctx: FieldCtx) -> dict[int, list[tuple[str, int | None]]]:
    p, r = ctx.p, ctx.rho
    third, ninth = pow(3, -1, p), pow(9, -1, p)
    i_ = ctx.sqrt(-1)
    sr = ctx.sqrt(-r)

    def pm(label, base, root, scale):
        if root is None:
            return [(label.replace("±", "+"), None), (label.replace("±", "-"), None)]
        return [
            (label.replace("±", "+"), (base + scale * root) * third % p),
            (label.replace("±", "-"), (base - scale * root) * third % p),
        ]

    return {
        1: [("(1+2rho)/3", (1 + 2 * r) * third % p)],
        2: [("(1+2rho)/3", (1 + 2 * r) * third % p)],
        3: pm("±sqrt(-1)/3", 0, i_, 1),
        4: [("1/3", third)],
        5: [("-1/3", -third % p)],
        6: pm("(rho±sqrt(-rho))/3", r, sr, 1),
        7: [("1/3", third)],
        8: pm("(rho+1±rho sqrt(-1))/3", r + 1, i_, r),
        9: [("1/3", third)],
        10: [("-1/3", -third % p)],
        11: [("(1+2rho)/9", (1 + 2 * r) * ninth % p)],
    }


@dataclass(frozen=True)
class TableEntry:
    index: int
    label: str
    value: int | None  # None when the needed square root is missing from F_p
    in_domain: bool
    actually_fixed: bool


@dataclass
class BurnsideReport:
    p: int
    domain_size: int
    orbit_count: int
    fixed_counts: list[int]  # true number of fixed points of each map
    table: list[TableEntry] = field(default_factory=list)

    @property
    def burnside_direct(self) -> Fraction:
        return Fraction(sum(self.fixed_counts), len(self.fixed_counts))

    @property
    def burnside_table(self) -> Fraction:
        counted = sum(1 for e in self.table if e.value is not None and e.in_domain)
        return Fraction(self.domain_size + counted, 12)

    @property
    def formula(self) -> int:
        return (self.p + 12 - self.p % 12) // 12

    @property
    def wrong_table_entries(self) -> list[TableEntry]:
        return [e for e in self.table if e.value is not None and e.in_domain and not e.actually_fixed]


def burnside_report(ctx: FieldCtx) -> BurnsideReport:
    if ctx.rho is None:
        raise WrongFieldClass("G_a acts only when p = 1 mod 3")
    p = ctx.p
    domain = noncyclic_domain(ctx)
    bad = set(excluded_parameters(ctx))
    mats = ga_matrices(ctx)
    fixed = [sum(1 for a in domain if _moebius(m, a, p) == a) for m in mats]
    table = []
    for k, entries in _tabulated_fixed_points(ctx).items():
        for label, v in entries:
            in_dom = v is not None and v not in bad
            fixed_ok = v is not None and _moebius(mats[k], v, p) == v
            table.append(TableEntry(k, label, v, in_dom, fixed_ok))
    return BurnsideReport(p, len(domain), len(ga_orbits(ctx)), fixed, table)


def burnside_count(ctx: FieldCtx) -> int:
    """Number of isomorphism classes of curves with full rational 3-torsion.

    Orbit enumeration, the Burnside average over true fixed points and the
    average over the tabulated fixed points must all agree.
    """
    rep = burnside_report(ctx)
    if not rep.orbit_count == rep.burnside_direct == rep.burnside_table:
        raise AssertionError(
            f"orbits {rep.orbit_count}, Burnside {rep.burnside_direct}, table {rep.burnside_table}"
        )
    return rep.orbit_count


# -- the 3-division quartic --------------------------------------------------------

SKOLEM_CONVENTION = (
    "y0 = 2*c/3 with c the smallest cube root of 2(27B^2 + 4A^3); "
    "the quartic splits completely iff rho^j*y0 - 4A/3 is a square for j = 0, 1, 2 "
    "(the three values are the resolvent-cubic roots, so the choice of c does not matter)"
)


def skolem_pattern(ctx: FieldCtx, A: int, B: int, variant: str = "corrected") -> tuple[int, ...]:
    """Factorization pattern of x^4 + 2Ax^2 + 4Bx - A^2/3 predicted from characters.

    ``variant`` selects the split-completely test:

    ``"corrected"``
        all three of rho^j*y0 - 4A/3 are squares (see ``SKOLEM_CONVENTION``).
    ``"printed"``
        y0 + 16A/3 and rho*y0 + 16A/3 both squares, with the smallest cube root.
    ``"printed-any-root"``
        the printed test passing for at least one of the three cube roots.
    """
    ctx.require_class(1)
    p = ctx.p
    D = (27 * B * B + 4 * A**3) % p
    if D == 0:
        raise SingularCurve(f"(A, B) = ({A}, {B}) is singular")
    w = 2 * D % p
    if ctx.chi(w) is not CubicClass.ONE:
        return (1, 3)
    third = pow(3, -1, p)
    r = ctx.rho
    roots = ctx.cube_roots(w)
    if variant == "corrected":
        y0 = 2 * roots[0] * third % p
        vals = [(y0 * pow(r, j, p) - 4 * A * third) % p for j in range(3)]
        full = all(ctx.is_square(v) for v in vals)
    elif variant in ("printed", "printed-any-root"):
        shift = 16 * A * third

        def test(c):
            y0 = 2 * c * third
            return ctx.is_square(y0 + shift) and ctx.is_square(r * y0 + shift)

        full = test(roots[0]) if variant == "printed" else any(test(c) for c in roots)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return (1, 1, 1, 1) if full else (2, 2)


def psi3_pattern(ctx: FieldCtx, A: int, B: int) -> tuple[int, ...]:
    return factor_pattern(monic_3div(ctx, A, B))


# -- twists ------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistRepresentative:
    coords: FamilyCoords  # the family member that was twisted
    partner: tuple[int, int]  # its short model
    short: tuple[int, int]  # the twist (t^2 A, t^3 B)

    def curve(self, ctx: FieldCtx) -> Curve:
        return Curve.short(ctx, *self.short)


def noncyclic_representatives(ctx: FieldCtx) -> list[FamilyCoords]:
    """Smallest parameter of each G_a orbit."""
    return [FamilyCoords(o[0], 0, FamilyKind.NONCYCLIC) for o in ga_orbits(ctx)]


def twist_representatives(ctx: FieldCtx, kind: FamilyKind) -> list[TwistRepresentative]:
    if ctx.rho is None:
        raise WrongFieldClass("twist families are defined for p = 1 mod 3")
    out = []
    if kind is FamilyKind.TWIST_CYCLIC:
        for c in cyclic_representatives(ctx):
            A, B, _ = to_short(family_curve(ctx, c.a, c.i))
            coords = FamilyCoords(c.a, c.i, FamilyKind.TWIST_CYCLIC)
            out.append(TwistRepresentative(coords, (A, B), quadratic_twist(ctx, A, B)))
    elif kind is FamilyKind.TWIST_NONCYCLIC:
        for c in noncyclic_representatives(ctx):
            A, B, _ = to_short(noncyclic_curve(ctx, c.a))
            coords = FamilyCoords(c.a, 0, FamilyKind.TWIST_NONCYCLIC)
            out.append(TwistRepresentative(coords, (A, B), quadratic_twist(ctx, A, B)))
    else:
        raise ValueError(f"{kind} is not a twist family")
    return out


# -- classification ----------------------------------------------------------------


@dataclass
class Torsion3Report:
    curve: Curve
    short: tuple[int, int]
    discriminant: int
    j_invariant: int
    point_count: int
    point_count_fp2: int
    group: oracle.GroupStructure
    rational_3torsion_order: int
    psi3_pattern: tuple[int, ...]
    stable_subgroups: list[oracle.StableSubgroup]
    family: FamilyCoords | None = None

    @property
    def p(self) -> int:
        return self.curve.p

    @property
    def trace(self) -> int:
        return self.p + 1 - self.point_count

    @property
    def pointwise_count(self) -> int:
        return sum(1 for s in self.stable_subgroups if s.pointwise_rational)

    @property
    def nonpointwise_count(self) -> int:
        return len(self.stable_subgroups) - self.pointwise_count

    def to_dict(self) -> dict:
        E = self.curve
        return {
            "curve": {"p": E.p, "general": list(E.coeffs), "short": list(self.short)},
            "discriminant": self.discriminant,
            "j_invariant": self.j_invariant,
            "point_count": self.point_count,
            "point_count_fp2": self.point_count_fp2,
            "trace": self.trace,
            "group": [self.group.n1, self.group.n2],
            "rational_3torsion_order": self.rational_3torsion_order,
            "psi3_pattern": list(self.psi3_pattern),
            "stable_subgroups": [
                {"abscissa": s.abscissa, "pointwise_rational": s.pointwise_rational}
                for s in self.stable_subgroups
            ],
            "family": None if self.family is None else self.family.to_dict(),
        }


def _find_noncyclic_parameter(E: Curve) -> int:
    for a in noncyclic_domain(E.ctx):
        if are_isomorphic(E, noncyclic_curve(E.ctx, a)) is not None:
            return a
    raise AssertionError(f"no E_a isomorphic to {E}")


def _family_of(E: Curve, torsion: list, twisted: bool) -> FamilyCoords | None:
    order = len(torsion)
    if order == 9:
        kind = FamilyKind.TWIST_NONCYCLIC if twisted else FamilyKind.NONCYCLIC
        return FamilyCoords(_find_noncyclic_parameter(E), 0, kind)
    if order == 3:
        P = min(P for P in torsion if P is not None)
        coords, _ = reduce_to_family(E, P)
        if twisted:
            return FamilyCoords(coords.a, coords.i, FamilyKind.TWIST_CYCLIC)
        return coords
    return None


def classify(E: Curve) -> Torsion3Report:
    if E.discriminant == 0:
        raise SingularCurve(str(E))
    ctx = E.ctx
    A, B, _ = to_short(E)
    torsion = oracle.rational_3torsion(E)
    stable = oracle.stable_order3_subgroups(E)
    report = Torsion3Report(
        curve=E,
        short=(A, B),
        discriminant=E.discriminant,
        j_invariant=E.j_invariant,
        point_count=oracle.count_points(E),
        point_count_fp2=oracle.count_points(E, 2),
        group=oracle.group_structure(E),
        rational_3torsion_order=len(torsion),
        psi3_pattern=psi3_pattern(ctx, A, B),
        stable_subgroups=stable,
    )
    if len(torsion) > 1:
        report.family = _family_of(E, torsion, twisted=False)
    elif stable:
        T = Curve.short(ctx, *quadratic_twist(ctx, A, B))
        report.family = _family_of(T, oracle.rational_3torsion(T), twisted=True)
    return report


def classify_checked(E: Curve) -> Torsion3Report:
    """``classify`` plus the report invariants, raising on any violation."""
    r = classify(E)
    npw = r.pointwise_count
    if r.rational_3torsion_order == 9 and (len(r.stable_subgroups) != 4 or npw != 4):
        raise AssertionError("full rational 3-torsion without four rational subgroups")
    if npw not in (0, 1, 4) or len(r.stable_subgroups) not in (0, 1, 2, 4):
        raise AssertionError(f"impossible subgroup counts in {r}")
    if (r.point_count_fp2 % 3 == 0) != bool(r.stable_subgroups):
        raise AssertionError("3 | #E(F_p^2) disagrees with the stable subgroup count")
    return r


__all__ = [
    "FamilyKind",
    "FamilyCoords",
    "family_curve",
    "rho_orbit",
    "m_a",
    "is_cyclic",
    "reduce_to_family",
    "cyclic_representatives",
    "skipped_singular",
    "excluded_parameters",
    "noncyclic_domain",
    "noncyclic_curve",
    "GA_LABELS",
    "ga_matrices",
    "ga_action",
    "ga_orbit",
    "ga_orbits",
    "ga_group_structure",
    "burnside_report",
    "burnside_count",
    "SKOLEM_CONVENTION",
    "skolem_pattern",
    "psi3_pattern",
    "TwistRepresentative",
    "noncyclic_representatives",
    "twist_representatives",
    "Torsion3Report",
    "classify",
    "classify_checked",
]
