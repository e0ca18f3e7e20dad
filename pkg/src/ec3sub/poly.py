"""Dense univariate polynomials over F_p and the division polynomials.

A :class:`Poly` stores its coefficients lowest degree first, as ints in
``range(p)``, with no trailing zeros; the zero polynomial has no coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BadIndex, NotSquarefree, SingularCurve, UnsupportedDegree, ZeroPolynomial
from .ff import FieldCtx

ROOT_SEED = 20061


class Poly:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        c = [int(a) % p for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.p = p
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, p: int) -> Poly:
        return cls(p, (0, 1))

    @classmethod
    def const(cls, p: int, c: int) -> Poly:
        return cls(p, (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly(self.p, (other,))
        return isinstance(other, Poly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly(self.p, (other,))

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(self.p, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        if isinstance(other, int):
            return Poly(self.p, [c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        result, base = Poly(self.p, (1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = pow(other.lc, -1, p)
        quot = [0] * max(0, len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            q = rem[k] * inv_lc % p
            if q:
                quot[k - db] = q
                for j, bj in enumerate(other.coeffs):
                    rem[k - db + j] = (rem[k - db + j] - q * bj) % p
        return Poly(p, quot), Poly(p, rem[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def evaluate_in(self, K, z):
        """Evaluate at an element of another field (e.g. F_{p^2}) via Horner."""
        acc = K.zero
        for c in reversed(self.coeffs):
            acc = K.add(K.mul(acc, z), K.embed(c))
        return acc

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self * pow(self.lc, -1, self.p)

    def derivative(self) -> Poly:
        return Poly(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, e: int, mod: Poly) -> Poly:
        result, base = Poly(self.p, (1,)), self % mod
        while e:
            if e & 1:
                result = result * base % mod
            base = base * base % mod
            e >>= 1
        return result


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while g:
        f, g = g, f % g
    return f.monic()


def is_squarefree(f: Poly) -> bool:
    return gcd(f, f.derivative()).degree == 0


def distinct_degree(f: Poly) -> list[tuple[int, Poly]]:
    """Distinct-degree factorization of a squarefree polynomial.

    Returns pairs ``(k, g_k)`` where g_k is the product of all monic
    irreducible factors of degree k.
    """
    p = f.p
    f = f.monic()
    x = Poly.x(p)
    h = x
    out = []
    k = 0
    while f.degree >= 2 * (k + 1):
        k += 1
        h = h.powmod(p, f)
        g = gcd(f, h - x)
        if g.degree > 0:
            out.append((k, g))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f))
    return out


def factor_pattern(f: Poly) -> tuple[int, ...]:
    """Sorted degrees of the irreducible factors of a squarefree f."""
    if not f:
        raise ZeroPolynomial("factor_pattern of the zero polynomial")
    if not is_squarefree(f):
        raise NotSquarefree(str(f))
    degs = []
    for k, g in distinct_degree(f):
        degs.extend([k] * (g.degree // k))
    return tuple(sorted(degs))


def _split_linear(g: Poly, rng: random.Random) -> list[int]:
    # g is monic, squarefree and a product of distinct linear factors
    p = g.p
    if g.degree == 0:
        return []
    if g.degree == 1:
        return [-g.coeffs[0] % p]
    while True:
        a = rng.randrange(p)
        h = Poly(p, (a, 1)).powmod((p - 1) // 2, g) - 1
        d = gcd(g, h)
        if 0 < d.degree < g.degree:
            return _split_linear(d, rng) + _split_linear(g // d, rng)


def roots(f: Poly, seed: int = ROOT_SEED) -> list[int]:
    """Distinct roots of f in F_p, sorted."""
    if not f:
        raise ZeroPolynomial("roots of the zero polynomial")
    p = f.p
    x = Poly.x(p)
    g = gcd(f, x.powmod(p, f) - x) if f.degree > 0 else Poly.const(p, 1)
    return sorted(_split_linear(g, random.Random(seed)))


def _det_mod(m: list[list[int]], p: int) -> int:
    m = [row[:] for row in m]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col] % p
        inv = pow(m[col][col], -1, p)
        for r in range(col + 1, n):
            factor = m[r][col] * inv % p
            if factor:
                for c in range(col, n):
                    m[r][c] = (m[r][c] - factor * m[col][c]) % p
    return det % p


def resultant(f: Poly, g: Poly) -> int:
    """Determinant of the Sylvester matrix."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return 0
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return _det_mod(rows, f.p)


def discriminant(f: Poly) -> int:
    if not f:
        raise ZeroPolynomial("discriminant of the zero polynomial")
    n = f.degree
    if n not in (2, 3, 4):
        raise UnsupportedDegree(f"discriminant implemented for degrees 2..4, got {n}")
    p = f.p
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) * pow(f.lc, -1, p) % p


@dataclass(frozen=True)
class DivPoly:
    """psi_n = (2y)^y_factor * x_part(x) on y^2 = x^3 + Ax + B."""

    x_part: Poly
    y_factor: int

    def __str__(self) -> str:
        s = str(self.x_part)
        return f"2y*({s})" if self.y_factor else s


def _check_short(ctx: FieldCtx, A: int, B: int) -> None:
    if (4 * A**3 + 27 * B**2) % ctx.p == 0:
        raise SingularCurve(f"4A^3 + 27B^2 = 0 for (A, B) = ({A}, {B}) mod {ctx.p}")


def division_polynomial(ctx: FieldCtx, A: int, B: int, n: int) -> DivPoly:
    """The n-th division polynomial of y^2 = x^3 + Ax + B, y^2 eliminated."""
    if n < 1:
        raise BadIndex(f"division polynomial index must be >= 1, got {n}")
    _check_short(ctx, A, B)
    p = ctx.p
    # g[k] is psi_k for odd k and psi_k / (2y) for even k
    g = {
        0: Poly(p),
        1: Poly(p, (1,)),
        2: Poly(p, (1,)),
        3: Poly(p, (-A * A, 12 * B, 6 * A, 0, 3)),
        4: Poly(p, (-8 * B * B - A**3, -4 * A * B, -5 * A * A, 20 * B, 5 * A, 0, 1)) * 2,
    }
    F2 = Poly(p, (4 * B, 4 * A, 0, 4)) ** 2  # (2y)^4

    def get(k: int) -> Poly:
        if k not in g:
            m = k // 2
            if k % 2:
                if m % 2 == 0:
                    g[k] = F2 * get(m + 2) * get(m) ** 3 - get(m - 1) * get(m + 1) ** 3
                else:
                    g[k] = get(m + 2) * get(m) ** 3 - F2 * get(m - 1) * get(m + 1) ** 3
            else:
                g[k] = get(m) * (get(m + 2) * get(m - 1) ** 2 - get(m - 2) * get(m + 1) ** 2)
        return g[k]

    return DivPoly(get(n), 1 - n % 2)


def monic_3div(ctx: FieldCtx, A: int, B: int) -> Poly:
    """x^4 + 2Ax^2 + 4Bx - A^2/3, the monic 3-division quartic."""
    p = ctx.p
    return Poly(p, (-A * A * pow(3, -1, p), 4 * B, 2 * A, 0, 1))
