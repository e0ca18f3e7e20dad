import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ec3sub.errors import NotPrime, PrimeTooSmall, WrongFieldClass
from ec3sub.ff import CubicClass, FieldCtx, cube_roots, cubic_character, frobenius, is_prime, make_field, sqrt

SMALL_PRIMES = [p for p in range(5, 200) if is_prime(p)]


def test_is_prime_matches_sieve():
    sieve = [True] * 2000
    sieve[0] = sieve[1] = False
    for i in range(2, 2000):
        if sieve[i]:
            for j in range(i * i, 2000, i):
                sieve[j] = False
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if sieve[n]]


def test_conventions_p7():
    F = make_field(7)
    assert (F.rho, F.b0, F.t, F.d) == (2, 3, 3, 3)
    assert F.residue_class_mod3 == 1


def test_conventions_p5():
    F = make_field(5)
    assert F.residue_class_mod3 == 2
    assert F.rho is None and F.b0 is None
    assert F.t == 2


@pytest.mark.parametrize("p, exc", [(4, NotPrime), (9, NotPrime), (3, PrimeTooSmall), (2, PrimeTooSmall), (1, PrimeTooSmall)])
def test_bad_moduli(p, exc):
    with pytest.raises(exc):
        make_field(p)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_conventions_are_smallest(p):
    F = make_field(p)
    nonres = [x for x in range(1, p) if pow(x, (p - 1) // 2, p) == p - 1]
    assert F.t == F.d == nonres[0]
    if p % 3 == 1:
        prim = [x for x in range(2, p) if pow(x, 3, p) == 1]
        assert F.rho == prim[0]
        assert F.chi(F.b0) is CubicClass.RHO
        assert all(F.chi(x) is not CubicClass.RHO for x in range(1, F.b0))


def test_cubic_character_examples():
    F = make_field(7)
    assert cubic_character(F, 1) is CubicClass.ONE
    assert cubic_character(F, 6) is CubicClass.ONE
    assert cubic_character(F, 3) is CubicClass.RHO
    assert cubic_character(F, 0) is CubicClass.ZERO


def test_root_examples():
    assert sqrt(make_field(7), 4) == 2
    assert sqrt(make_field(7), 3) is None
    assert cube_roots(make_field(7), 6) == [3, 5, 6]
    assert cube_roots(make_field(5), 2) == [3]


_VAL = {CubicClass.ONE: 0, CubicClass.RHO: 1, CubicClass.RHO_SQ: 2}


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_chi_multiplicative_and_cube_roots(p):
    F = make_field(p)
    for x in range(1, p):
        assert (F.chi(x) is CubicClass.ONE) == bool(F.cube_roots(x))
        assert sorted(F.cube_roots(x)) == sorted(r for r in range(p) if pow(r, 3, p) == x)
        if p % 3 == 2:
            assert len(F.cube_roots(x)) == 1
    if p % 3 == 1:
        for x in range(1, p, 3):
            for y in range(1, p, 5):
                assert (_VAL[F.chi(x)] + _VAL[F.chi(y)]) % 3 == _VAL[F.chi(x * y)]
    assert F.chi(-1) is CubicClass.ONE


@pytest.mark.parametrize("p", [5, 7, 13, 17, 97, 193, 1009, 10007])
def test_sqrt_agrees_with_scan(p):
    F = make_field(p)
    squares = {x * x % p for x in range(p)}
    for x in range(0, p, max(1, p // 200)):
        r = F.sqrt(x)
        if x in squares:
            assert r * r % p == x and r <= p - r
        else:
            assert r is None


def test_require_class():
    make_field(7).require_class(1)
    with pytest.raises(WrongFieldClass):
        make_field(5).require_class(1)


# -- F_{p^2} --------------------------------------------------------------------


def test_frobenius_examples():
    F = make_field(7)
    K = F.ext
    assert frobenius(F, K.embed(4)) == K.embed(4)
    assert frobenius(F, K.gen) == K.neg(K.gen)
    z = K(1, 1)
    assert frobenius(F, z) == K(1, -1)
    assert K.pow(z, 7) == K(1, -1)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_frobenius_fixed_points_are_base_field(p):
    K = make_field(p).ext
    for z in K.elements():
        fz = K.conj(z)
        assert fz == K.pow(z, p)
        assert K.conj(fz) == z
        assert (fz == z) == z.is_base()


def test_ext_sqrt_complete():
    K = make_field(7).ext
    for z in K.elements():
        r = K.sqrt(z)
        if K.is_square(z):
            assert K.mul(r, r) == z
        else:
            assert r is None


ext_primes = st.sampled_from([5, 7, 11, 13, 101, 103])


@st.composite
def ext_triples(draw):
    p = draw(ext_primes)
    el = st.tuples(st.integers(0, p - 1), st.integers(0, p - 1))
    return p, draw(el), draw(el), draw(el)


@settings(max_examples=200, deadline=None)
@given(ext_triples())
def test_ext_field_axioms(data):
    p, a, b, c = data
    K = make_field(p).ext
    a, b, c = K(*a), K(*b), K(*c)
    assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
    assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
    assert K.add(a, K.neg(a)) == K.zero
    if not K.is_zero(a):
        assert K.mul(a, K.inv(a)) == K.one
    assert K.norm(K.mul(a, b)) == K.norm(a) * K.norm(b) % p


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([5, 7, 13, 101, 1_000_003]), st.integers(), st.integers(), st.integers())
def test_base_field_axioms(p, a, b, c):
    F = make_field(p)
    a, b, c = F(a), F(b), F(c)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(F.mul(a, b), a) == b


def test_large_prime_exact():
    F = FieldCtx(1_000_003)
    assert F.mul(1_000_002, 1_000_002) == 1
    r = F.sqrt(2)
    assert r is None or r * r % F.p == 2
