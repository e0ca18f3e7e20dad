"""Arithmetic in F_p and F_{p^2}, with the quadratic and cubic residue characters.

Elements of F_p are plain Python ints kept in ``range(p)``.  Elements of the
quadratic extension F_p(sqrt d) are :class:`QuadExtElement` pairs ``(c0, c1)``
standing for ``c0 + c1*sqrt(d)``.

Both :class:`FieldCtx` and :class:`QuadExt` expose the same small set of
methods (``add``, ``sub``, ``mul``, ``neg``, ``inv``, ``embed``, ...), so the
curve group law is written once and runs over either field.
"""

from __future__ import annotations

import enum
from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple

from .errors import NotPrime, PrimeTooSmall, WrongFieldClass


def is_prime(n: int) -> bool:
    # trial division is plenty below ~10^12, far past the desk-scale bound
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class CubicClass(enum.Enum):
    ZERO = "0"
    ONE = "1"
    RHO = "rho"
    RHO_SQ = "rho^2"


class FieldCtx:
    """The prime field F_p together with its canonical conventions.

    ``rho`` is the smallest primitive cube root of unity and ``b0`` the
    smallest element with ``chi(b0) == RHO``; both are ``None`` when
    p = 2 mod 3.  ``t`` is the smallest quadratic non-residue, and ``d = t``
    is the non-square adjoined to build F_{p^2}.
    """

    def __init__(self, p: int):
        if p <= 3:
            raise PrimeTooSmall(f"p must be a prime > 3, got {p}")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.t = next(x for x in range(2, p) if pow(x, (p - 1) // 2, p) == p - 1)
        self.d = self.t
        if p % 3 == 1:
            self.rho = next(x for x in range(2, p) if pow(x, 3, p) == 1)
            e = (p - 1) // 3
            self.b0 = next(x for x in range(2, p) if pow(x, e, p) == self.rho)
        else:
            self.rho = None
            self.b0 = None

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    @property
    def residue_class_mod3(self) -> int:
        return self.p % 3

    def conventions(self) -> dict:
        return {"p": self.p, "rho": self.rho, "b0": self.b0, "t": self.t, "d": self.d}

    def require_class(self, r: int) -> None:
        if self.p % 3 != r:
            raise WrongFieldClass(f"operation requires p = {r} mod 3, got p = {self.p}")

    # -- field protocol -------------------------------------------------
    zero = 0
    one = 1

    def __call__(self, v: int) -> int:
        return v % self.p

    embed = __call__

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    # -- characters ---------------------------------------------------
    def legendre(self, x: int) -> int:
        x %= self.p
        if x == 0:
            return 0
        return 1 if pow(x, (self.p - 1) // 2, self.p) == 1 else -1

    def is_square(self, x: int) -> bool:
        return self.legendre(x) >= 0

    def chi(self, x: int) -> CubicClass:
        """Cubic character x -> x^((p-1)/3), named against {1, rho, rho^2}."""
        x %= self.p
        if x == 0:
            return CubicClass.ZERO
        if self.rho is None:
            return CubicClass.ONE
        v = pow(x, (self.p - 1) // 3, self.p)
        if v == 1:
            return CubicClass.ONE
        return CubicClass.RHO if v == self.rho else CubicClass.RHO_SQ

    def is_cube(self, x: int) -> bool:
        return self.chi(x) in (CubicClass.ZERO, CubicClass.ONE)

    # -- roots --------------------------------------------------------
    def sqrt(self, x: int) -> int | None:
        """Tonelli-Shanks; returns the smaller of the two roots, or None."""
        p = self.p
        x %= p
        if x == 0:
            return 0
        if pow(x, (p - 1) // 2, p) != 1:
            return None
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        c = pow(self.t, q, p)
        r = pow(x, (q + 1) // 2, p)
        tt = pow(x, q, p)
        m = s
        while tt != 1:
            i, t2 = 0, tt
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            r = r * b % p
            c = b * b % p
            tt = tt * c % p
            m = i
        return min(r, p - r)

    def cube_roots(self, x: int) -> list[int]:
        """All r with r^3 = x, sorted."""
        p = self.p
        x %= p
        if x == 0:
            return [0]
        if self.rho is None:
            return [pow(x, (2 * p - 1) // 3, p)]
        if pow(x, (p - 1) // 3, p) != 1:
            return []
        r = self._cube_root_3sylow(x)
        rho = self.rho
        return sorted({r, r * rho % p, r * rho * rho % p})

    def _cube_root_3sylow(self, x: int) -> int:
        # Tonelli-Shanks adapted to the 3-Sylow subgroup (Adleman-Manders-Miller, r = 3)
        p = self.p
        m, s = p - 1, 0
        while m % 3 == 0:
            m //= 3
            s += 1
        e = pow(3, -1, m) if m > 1 else 0
        r0 = pow(x, e, p)
        # r0^3 = x * h with h in the 3-Sylow subgroup
        h = pow(x, 3 * e - 1, p)
        c = pow(self.b0, m, p)  # generator of the 3-Sylow subgroup, order 3^s
        target = pow(h, -1, p)
        gamma = pow(c, 3 ** (s - 1), p)
        j = 0
        for k in range(s):
            hk = pow(pow(c, -j, p) * target % p, 3 ** (s - 1 - k), p)
            if hk == 1:
                dk = 0
            elif hk == gamma:
                dk = 1
            else:
                dk = 2
            j += dk * 3**k
        assert j % 3 == 0, "input was not a cube"
        return r0 * pow(c, j // 3, p) % p

    @cached_property
    def ext(self) -> QuadExt:
        return QuadExt(self)


class QuadExtElement(NamedTuple):
    c0: int
    c1: int

    def is_base(self) -> bool:
        return self.c1 == 0


class QuadExt:
    """F_{p^2} = F_p(sqrt d) with d the canonical non-square of the base field."""

    def __init__(self, base: FieldCtx):
        self.base = base
        self.p = base.p
        self.d = base.d
        self.zero = QuadExtElement(0, 0)
        self.one = QuadExtElement(1, 0)
        self.gen = QuadExtElement(0, 1)

    def __repr__(self) -> str:
        return f"QuadExt(p={self.p}, d={self.d})"

    def __call__(self, c0: int, c1: int = 0) -> QuadExtElement:
        return QuadExtElement(c0 % self.p, c1 % self.p)

    def embed(self, v) -> QuadExtElement:
        if isinstance(v, QuadExtElement):
            return v
        return QuadExtElement(v % self.p, 0)

    def elements(self) -> Iterator[QuadExtElement]:
        p = self.p
        for c1 in range(p):
            for c0 in range(p):
                yield QuadExtElement(c0, c1)

    def add(self, a, b):
        p = self.p
        return QuadExtElement((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def sub(self, a, b):
        p = self.p
        return QuadExtElement((a[0] - b[0]) % p, (a[1] - b[1]) % p)

    def neg(self, a):
        p = self.p
        return QuadExtElement(-a[0] % p, -a[1] % p)

    def mul(self, a, b):
        p = self.p
        a0, a1 = a
        b0, b1 = b
        return QuadExtElement((a0 * b0 + self.d * a1 * b1) % p, (a0 * b1 + a1 * b0) % p)

    def norm(self, a) -> int:
        return (a[0] * a[0] - self.d * a[1] * a[1]) % self.p

    def trace(self, a) -> int:
        return 2 * a[0] % self.p

    def conj(self, a):
        return QuadExtElement(a[0], -a[1] % self.p)

    frobenius = conj

    def inv(self, a):
        n = self.norm(a)
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in F_p^2")
        ni = pow(n, -1, self.p)
        return QuadExtElement(a[0] * ni % self.p, -a[1] * ni % self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a[0] == 0 and a[1] == 0

    def is_square(self, a) -> bool:
        # a is a square in F_{p^2} iff its norm is a square in F_p
        return self.base.is_square(self.norm(a))

    def sqrt(self, a) -> QuadExtElement | None:
        """A square root, or None; the lexicographically smaller root is returned."""
        F, p = self.base, self.p
        a0, a1 = a
        if a1 == 0:
            r = F.sqrt(a0)
            if r is not None:
                return QuadExtElement(r, 0)
            r = F.sqrt(F.div(a0, self.d))
            return QuadExtElement(0, r)
        n = F.sqrt(self.norm(a))
        if n is None:
            return None
        half = pow(2, -1, p)
        for cand in ((a0 + n) * half % p, (a0 - n) * half % p):
            x = F.sqrt(cand)
            if x:
                y = a1 * pow(2 * x, -1, p) % p
                root = QuadExtElement(x, y)
                other = QuadExtElement(-x % p, -y % p)
                return min(root, other)
        raise AssertionError("unreachable: norm is a square but no root found")


@lru_cache(maxsize=None)
def make_field(p: int) -> FieldCtx:
    return FieldCtx(p)


def cubic_character(ctx: FieldCtx, x: int) -> CubicClass:
    return ctx.chi(x)


def sqrt(ctx: FieldCtx, x):
    if isinstance(x, QuadExtElement):
        return ctx.ext.sqrt(x)
    return ctx.sqrt(x)


def cube_roots(ctx: FieldCtx, x: int) -> list[int]:
    return ctx.cube_roots(x)


def frobenius(ctx: FieldCtx, z: QuadExtElement) -> QuadExtElement:
    """z -> z^p, which on F_p(sqrt d) is conjugation."""
    return ctx.ext.conj(ctx.ext.embed(z))
