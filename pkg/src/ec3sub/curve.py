"""Weierstrass curves over F_p: invariants, group law, coordinate changes, twists.

Points are ``None`` (the point at infinity) or a pair ``(x, y)``.  Coordinates
are ints for F_p-points and :class:`~ec3sub.ff.QuadExtElement` for points
over F_{p^2}; the group law picks the field from the coordinate type.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PointNotOnCurve, PointNotRational, SingularCurve, WrongOrder
from .ff import FieldCtx, QuadExtElement

Point = tuple | None
INFINITY = None


@dataclass(frozen=True)
class Curve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

    Direct construction does not reject singular coefficients (so that the
    discriminant of a degenerate cubic can be computed); the ``general`` and
    ``short`` constructors do.
    """

    ctx: FieldCtx
    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0

    def __post_init__(self):
        p = self.ctx.p
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, getattr(self, name) % p)

    @classmethod
    def general(cls, ctx: FieldCtx, a1, a2, a3, a4, a6) -> Curve:
        E = cls(ctx, a1, a2, a3, a4, a6)
        if E.discriminant == 0:
            raise SingularCurve(f"singular curve {E}")
        return E

    @classmethod
    def short(cls, ctx: FieldCtx, A: int, B: int) -> Curve:
        return cls.general(ctx, 0, 0, 0, A, B)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def coeffs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_short(self) -> bool:
        return self.a1 == self.a2 == self.a3 == 0

    def __str__(self) -> str:
        def term(c, mono):
            return "" if not c else f" + {mono}" if c == 1 else f" + {c}{mono}"

        lhs = "y^2" + term(self.a1, "xy") + term(self.a3, "y")
        rhs = "x^3" + term(self.a2, "x^2") + term(self.a4, "x")
        if self.a6:
            rhs += f" + {self.a6}"
        return f"{lhs} = {rhs} over F_{self.p}"

    # -- invariants ------------------------------------------------------
    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.coeffs
        p = self.p
        b2 = (a1 * a1 + 4 * a2) % p
        b4 = (2 * a4 + a1 * a3) % p
        b6 = (a3 * a3 + 4 * a6) % p
        b8 = (a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4) % p
        return b2, b4, b6, b8

    @property
    def c4(self) -> int:
        b2, b4, _, _ = self.b_invariants
        return (b2 * b2 - 24 * b4) % self.p

    @property
    def c6(self) -> int:
        b2, b4, b6, _ = self.b_invariants
        return (-(b2**3) + 36 * b2 * b4 - 216 * b6) % self.p

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return (-b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6) % self.p

    @property
    def j_invariant(self) -> int:
        D = self.discriminant
        if D == 0:
            raise SingularCurve("j-invariant of a singular curve")
        return pow(self.c4, 3, self.p) * pow(D, -1, self.p) % self.p

    # -- points -------------------------------------------------------------
    def field_of(self, P):
        if P is not None and isinstance(P[0], QuadExtElement):
            return self.ctx.ext
        return self.ctx

    def contains(self, P: Point) -> bool:
        if P is None:
            return True
        K = self.field_of(P)
        x, y = P
        a1, a2, a3, a4, a6 = (K.embed(c) for c in self.coeffs)
        lhs = K.mul(y, K.add(y, K.add(K.mul(a1, x), a3)))
        rhs = K.add(K.mul(K.mul(x, x), K.add(x, a2)), K.add(K.mul(a4, x), a6))
        return lhs == rhs

    def neg(self, P: Point) -> Point:
        if P is None:
            return None
        K = self.field_of(P)
        x, y = P
        return (x, K.sub(K.neg(y), K.add(K.mul(K.embed(self.a1), x), K.embed(self.a3))))

    def add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        K = self.field_of(P)
        if K is not self.field_of(Q):
            P, Q = self._lift(P), self._lift(Q)
            K = self.ctx.ext
        a1, a2, a3, a4, a6 = (K.embed(c) for c in self.coeffs)
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if K.is_zero(K.add(K.add(y1, y2), K.add(K.mul(a1, x2), a3))):
                return None
            # tangent: slope (3x^2 + 2a2 x + a4 - a1 y) / (2y + a1 x + a3)
            den = K.add(K.add(K.add(y1, y1), K.mul(a1, x1)), a3)
            x1sq = K.mul(x1, x1)
            num = K.sub(
                K.add(K.add(K.mul(K.embed(3), x1sq), K.mul(K.embed(2), K.mul(a2, x1))), a4),
                K.mul(a1, y1),
            )
            nu_num = K.sub(
                K.add(K.add(K.neg(K.mul(x1sq, x1)), K.mul(a4, x1)), K.mul(K.embed(2), a6)),
                K.mul(a3, y1),
            )
            den_inv = K.inv(den)
            lam, nu = K.mul(num, den_inv), K.mul(nu_num, den_inv)
        else:
            den_inv = K.inv(K.sub(x2, x1))
            lam = K.mul(K.sub(y2, y1), den_inv)
            nu = K.mul(K.sub(K.mul(y1, x2), K.mul(y2, x1)), den_inv)
        x3 = K.sub(K.sub(K.sub(K.add(K.mul(lam, lam), K.mul(a1, lam)), a2), x1), x2)
        y3 = K.sub(K.sub(K.neg(K.mul(K.add(lam, a1), x3)), nu), a3)
        return (x3, y3)

    def _lift(self, P: Point) -> Point:
        if P is None or isinstance(P[0], QuadExtElement):
            return P
        K = self.ctx.ext
        return (K.embed(P[0]), K.embed(P[1]))

    def mul(self, k: int, P: Point) -> Point:
        if k < 0:
            k, P = -k, self.neg(P)
        R = None
        while k:
            if k & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            k >>= 1
        return R

    def order(self, P: Point, group_order: int | None = None) -> int:
        """Exact order of P.

        With ``group_order`` the order is found by stripping prime factors;
        otherwise by stepping through multiples of P.
        """
        if P is None:
            return 1
        if group_order is not None:
            n = group_order
            for q in _prime_factors(group_order):
                while n % q == 0 and self.mul(n // q, P) is None:
                    n //= q
            if self.mul(n, P) is not None:
                raise ValueError("group_order is not a multiple of the point order")
            return n
        k, Q = 1, P
        while Q is not None:
            Q = self.add(Q, P)
            k += 1
        return k

    def lift_x(self, x: int) -> list[Point]:
        """F_p-points with abscissa x (zero, one or two of them)."""
        F = self.ctx
        a1, a2, a3, a4, a6 = self.coeffs
        # (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
        lin = (a1 * x + a3) % F.p
        disc = (4 * (x**3 + a2 * x * x + a4 * x + a6) + lin * lin) % F.p
        s = F.sqrt(disc)
        if s is None:
            return []
        half = pow(2, -1, F.p)
        ys = sorted({(s - lin) * half % F.p, (-s - lin) * half % F.p})
        return [(x, y) for y in ys]


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- module-level operations -----------------------------------------------------


def discriminant(E: Curve) -> int:
    return E.discriminant


def j_invariant(E: Curve) -> int:
    return E.j_invariant


def _check_point(E: Curve, P: Point) -> None:
    if not E.contains(P):
        raise PointNotOnCurve(f"{P} is not on {E}")


def add(E: Curve, P: Point, Q: Point) -> Point:
    _check_point(E, P)
    _check_point(E, Q)
    return E.add(P, Q)


def scalar_mul(E: Curve, k: int, P: Point) -> Point:
    _check_point(E, P)
    return E.mul(k, P)


def point_order(E: Curve, P: Point, group_order: int | None = None) -> int:
    _check_point(E, P)
    return E.order(P, group_order)


@dataclass(frozen=True)
class IsoWitness:
    """The substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + w.

    ``apply`` maps the source curve (unprimed) to the target (primed);
    ``push`` carries points the same way and ``pull`` carries them back.
    """

    u: int = 1
    r: int = 0
    s: int = 0
    w: int = 0

    def apply(self, E: Curve) -> Curve:
        F = E.ctx
        p = F.p
        u, r, s, w = self.u, self.r, self.s, self.w
        a1, a2, a3, a4, a6 = E.coeffs
        ui = pow(u, -1, p)
        na1 = (a1 + 2 * s) * ui
        na2 = (a2 - s * a1 + 3 * r - s * s) * ui**2
        na3 = (a3 + r * a1 + 2 * w) * ui**3
        na4 = (a4 - s * a3 + 2 * r * a2 - (w + r * s) * a1 + 3 * r * r - 2 * s * w) * ui**4
        na6 = (a6 + r * a4 + r * r * a2 + r**3 - w * a3 - w * w - r * w * a1) * ui**6
        return Curve(F, na1, na2, na3, na4, na6)

    def push(self, E: Curve, P: Point) -> Point:
        if P is None:
            return None
        K = E.field_of(P)
        u, r, s, w = (K.embed(c) for c in (self.u, self.r, self.s, self.w))
        x, y = P
        ui = K.inv(u)
        ui2 = K.mul(ui, ui)
        xr = K.sub(x, r)
        nx = K.mul(xr, ui2)
        ny = K.mul(K.sub(K.sub(y, K.mul(s, xr)), w), K.mul(ui2, ui))
        return (nx, ny)

    def pull(self, E_target: Curve, P: Point) -> Point:
        return self.inverse(E_target.p).push(E_target, P)

    def inverse(self, p: int) -> IsoWitness:
        u, r, s, w = self.u, self.r, self.s, self.w
        ui = pow(u, -1, p)
        return IsoWitness(ui, -r * ui * ui % p, -s * ui % p, (s * r - w) * ui**3 % p)

    def then(self, other: IsoWitness, p: int) -> IsoWitness:
        """Composite witness: first ``self``, then ``other``."""
        u1, r1, s1, w1 = self.u, self.r, self.s, self.w
        u2, r2, s2, w2 = other.u, other.r, other.s, other.w
        return IsoWitness(
            u1 * u2 % p,
            (r1 + u1 * u1 * r2) % p,
            (s1 + u1 * s2) % p,
            (w1 + u1**3 * w2 + s1 * u1 * u1 * r2) % p,
        )


IDENTITY = IsoWitness()


def to_short(E: Curve) -> tuple[int, int, IsoWitness]:
    """Short model y^2 = x^3 + Ax + B of E and the witness E -> short model."""
    if E.is_short:
        return E.a4, E.a6, IDENTITY
    p = E.p
    a1, a2, a3 = E.a1, E.a2, E.a3
    half, third = pow(2, -1, p), pow(3, -1, p)
    s = -a1 * half % p
    r = (s * s + s * a1 - a2) * third % p
    w = -(a3 + r * a1) * half % p
    W = IsoWitness(1, r, s, w)
    S = W.apply(E)
    assert S.is_short
    return S.a4, S.a6, W


def quadratic_twist(ctx: FieldCtx, A: int, B: int) -> tuple[int, int]:
    if (4 * A**3 + 27 * B**2) % ctx.p == 0:
        raise SingularCurve("twist of a singular curve")
    t, p = ctx.t, ctx.p
    return t * t * A % p, t**3 * B % p


def _sixth_roots(F: FieldCtx, c: int) -> list[int]:
    out = set()
    for v in F.cube_roots(c):
        r = F.sqrt(v)
        if r is not None:
            out |= {r, -r % F.p}
    return sorted(out)


def _fourth_roots(F: FieldCtx, c: int) -> list[int]:
    out = set()
    r2 = F.sqrt(c)
    if r2 is None:
        return []
    for v in (r2, -r2 % F.p):
        r = F.sqrt(v)
        if r is not None:
            out |= {r, -r % F.p}
    return sorted(out)


def short_isomorphism_scale(F: FieldCtx, A1, B1, A2, B2) -> int | None:
    """Smallest u with A1 = u^4 A2 and B1 = u^6 B2, or None."""
    p = F.p
    A1, B1, A2, B2 = A1 % p, B1 % p, A2 % p, B2 % p
    if (A1 == 0) != (A2 == 0) or (B1 == 0) != (B2 == 0):
        return None
    if A1 == 0:
        cands = _sixth_roots(F, B1 * pow(B2, -1, p))
    elif B1 == 0:
        cands = _fourth_roots(F, A1 * pow(A2, -1, p))
    else:
        # u^2 = (u^6 / u^4) is forced
        v = A2 * B1 * pow(A1 * B2, -1, p) % p
        if v * v % p != A1 * pow(A2, -1, p) % p or pow(v, 3, p) != B1 * pow(B2, -1, p) % p:
            return None
        r = F.sqrt(v)
        cands = [] if r is None else [r]
    for u in cands:
        if pow(u, 4, p) * A2 % p == A1 and pow(u, 6, p) * B2 % p == B1:
            return u
    return None


def are_isomorphic(E1: Curve, E2: Curve) -> IsoWitness | None:
    """A witness carrying E1 onto E2 over F_p, or None."""
    if E1.ctx != E2.ctx:
        raise ValueError("curves over different fields")
    for E in (E1, E2):
        if E.discriminant == 0:
            raise SingularCurve(str(E))
    if E1.j_invariant != E2.j_invariant:
        return None
    p = E1.p
    A1, B1, W1 = to_short(E1)
    A2, B2, W2 = to_short(E2)
    u = short_isomorphism_scale(E1.ctx, A1, B1, A2, B2)
    if u is None:
        return None
    return W1.then(IsoWitness(u), p).then(W2.inverse(p), p)


def translate_to_origin(E: Curve, P: Point) -> tuple[Curve, IsoWitness]:
    """Move an F_p-point of order 3 to (0, 0) with tangent y = 0.

    The result has the shape y^2 + a1 xy + a3 y = x^3.
    """
    if P is None:
        raise WrongOrder("the point at infinity has order 1")
    if isinstance(P[0], QuadExtElement):
        if not (P[0].is_base() and P[1].is_base()):
            raise PointNotRational(f"{P} is not defined over F_{E.p}")
        P = (P[0].c0, P[1].c0)
    _check_point(E, P)
    if E.mul(3, P) is not None:
        raise WrongOrder(f"{P} does not have order 3")
    p = E.p
    W = IsoWitness(1, P[0], 0, P[1])
    T = W.apply(E)
    # tangent at the origin is a3 y = a4 x; shear it to y = 0
    W = W.then(IsoWitness(1, 0, T.a4 * pow(T.a3, -1, p) % p, 0), p)
    T = W.apply(E)
    assert T.a2 == T.a4 == T.a6 == 0, T
    return T, W
