import random
from itertools import combinations, product

import pytest

from ec3sub import oracle, torsion3
from ec3sub.curve import Curve, are_isomorphic, quadratic_twist, to_short
from ec3sub.errors import ExcludedParameter, SingularCurve, WrongFieldClass
from ec3sub.ff import make_field
from ec3sub.torsion3 import FamilyKind

F5, F7, F13 = make_field(5), make_field(7), make_field(13)


def _short_pairs(p):
    return [(A, B) for A, B in product(range(p), repeat=2) if (4 * A**3 + 27 * B * B) % p]


# -- E^i_a -----------------------------------------------------------------------


def test_reduce_to_family_examples():
    E = Curve.general(make_field(11), 2, 0, 8, 0, 0)
    coords, W = torsion3.reduce_to_family(E, (0, 0))
    assert (coords.a, coords.i) == (1, 0)
    assert W.apply(E) == torsion3.family_curve(make_field(11), 1, 0)

    E = Curve.general(F7, 0, 0, 1, 0, 0)
    coords, W = torsion3.reduce_to_family(E, (0, 0))
    assert (coords.a, coords.i) == (0, 0) and W.apply(E) == E

    E = Curve.general(F7, 1, 0, 3, 0, 0)
    coords, _ = torsion3.reduce_to_family(E, (0, 0))
    assert (coords.a, coords.i) == (1, 1)


def test_reduce_to_family_singular():
    with pytest.raises(SingularCurve):
        torsion3.reduce_to_family(Curve(F7, 3, 0, 1, 0, 0), (0, 0))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_reduce_to_family_witness(p):
    F = make_field(p)
    rng = random.Random(p)
    for A, B in rng.sample(_short_pairs(p), min(40, len(_short_pairs(p)))):
        E = Curve.short(F, A, B)
        for P in oracle.rational_3torsion(E):
            if P is None:
                continue
            coords, W = torsion3.reduce_to_family(E, P)
            assert W.apply(E) == torsion3.family_curve(F, coords.a, coords.i)
            assert W.push(E, P) == (0, 0)
            if p % 3 == 2:
                assert coords.i == 0


def test_is_cyclic_examples():
    assert torsion3.is_cyclic(F7, 0, 0) is False
    assert oracle.group_structure(torsion3.family_curve(F7, 0, 0)) == oracle.GroupStructure(3, 3)
    assert torsion3.is_cyclic(F7, 1, 0) is True
    for a in range(5):
        if a != 3:
            assert torsion3.is_cyclic(F5, a, 0)
    with pytest.raises(SingularCurve):
        torsion3.is_cyclic(F7, 3, 0)


@pytest.mark.parametrize("p", [7, 13, 19, 31])
def test_is_cyclic_matches_oracle(p):
    F = make_field(p)
    for a, i in product(range(p), range(3)):
        b = pow(F.b0, i, p)
        if (a**3 - 27 * b) % p == 0:
            continue
        n3 = len(oracle.rational_3torsion(torsion3.family_curve(F, a, i)))
        assert n3 in (3, 9)
        assert torsion3.is_cyclic(F, a, i) == (n3 == 3)


def test_cyclic_representatives_q2mod3():
    reps = torsion3.cyclic_representatives(F5)
    assert [c.a for c in reps] == [0, 1, 2, 4]
    curves = [torsion3.family_curve(F5, c.a, 0) for c in reps]
    for E1, E2 in combinations(curves, 2):
        assert are_isomorphic(E1, E2) is None
    assert torsion3.skipped_singular(F5) == [(3, 0)]


@pytest.mark.parametrize("p", [7, 13, 19])
def test_cyclic_representatives_match_census(p):
    F = make_field(p)
    reps = torsion3.cyclic_representatives(F)
    assert reps == sorted(reps, key=lambda c: (c.i, c.a))
    assert len(reps) == len(oracle.census(F, "cyclic")) == (2 * p + 4) // 3
    curves = [torsion3.family_curve(F, c.a, c.i) for c in reps]
    idx = oracle.class_index(oracle.short_iso_classes(F))
    keys = {idx[to_short(E)[:2]] for E in curves}
    assert len(keys) == len(curves)


def test_printed_set_reading_differs():
    # ((rho+1) a)^3 = -a^3, so the printed set is not a union of isomorphism classes
    r = F7.rho
    for a in range(1, 7):
        assert pow((r + 1) * a, 3, 7) == -pow(a, 3, 7) % 7
    assert torsion3.rho_orbit(F7, 1) == [1, 2, 4]
    assert len(torsion3.cyclic_representatives(F7, "printed")) == 8
    assert len(torsion3.cyclic_representatives(F13, "printed")) == 7


@pytest.mark.parametrize("p", [5, 11, 17])
def test_q2mod3_subgroup_picture(p):
    # every nonsingular curve, one isomorphism class at a time
    F = make_field(p)
    for cls in oracle.census(F):
        r = cls.report
        if r.point_count % 3 == 0:
            assert r.rational_3torsion_order == 3
            assert len(r.stable_subgroups) == 2 and r.pointwise_count == 1
            assert r.family.kind is FamilyKind.CYCLIC and r.family.i == 0


# -- E_a and G_a -------------------------------------------------------------------


def test_noncyclic_examples():
    assert torsion3.excluded_parameters(F7) == [0, 1, 3]
    assert torsion3.noncyclic_domain(F7) == [2, 4, 5, 6]
    g = oracle.group_structure(torsion3.noncyclic_curve(F7, 2))
    assert g.n2 % 3 == 0
    with pytest.raises(ExcludedParameter):
        torsion3.noncyclic_curve(F7, 3)
    with pytest.raises(WrongFieldClass):
        torsion3.noncyclic_curve(F5, 1)


@pytest.mark.parametrize("p", [7, 13, 19])
def test_noncyclic_full_torsion(p):
    F = make_field(p)
    for a in range(p):
        a1, a3 = torsion3.noncyclic_coeffs(F, a)
        singular = Curve(F, a1, 0, a3, 0, 0).discriminant == 0
        assert singular == (a in torsion3.excluded_parameters(F))
        if not singular:
            assert len(oracle.rational_3torsion(torsion3.noncyclic_curve(F, a))) == 9


def _literal(label_index, a, p, r):
    inv = lambda x: pow(x % p, -1, p)  # noqa: E731
    forms = [
        lambda: a,
        lambda: a * (1 + r) * inv(3 * a - r),
        lambda: a * r * inv(3 * a - 1 - r),
        lambda: -inv(9 * a),
        lambda: -(1 + r) * (3 * a - 1 - r) * inv(3),
        lambda: r * (3 * a - r) * inv(9 * a),
        lambda: r * (3 * a - 1 - r) * inv(3 * (3 * a - r)),
        lambda: -r * inv(3 * (3 * a - 1 - r)),
        lambda: (1 + r) * (3 * a - r) * inv(3 * (3 * a - 1 - r)),
        lambda: (1 + r) * (3 * a - 1 - r) * inv(9 * a),
        lambda: (1 + r) * inv(3 * (3 * a - r)),
        lambda: r * (3 * a - r) * inv(3),
    ]
    try:
        return forms[label_index]() % p
    except ValueError:
        return None


@pytest.mark.parametrize("p", [7, 13, 19, 31])
def test_ga_matrices_match_formulas(p):
    F = make_field(p)
    for a in torsion3.noncyclic_domain(F):
        for g in torsion3.ga_action(F, a):
            assert g.value == _literal(g.index, a, p, F.rho)


def test_ga_action_examples():
    imgs = torsion3.ga_action(F7, 4)
    assert imgs[1].value == 4 and imgs[1].label == "a(1+rho)/(3a-rho)"
    assert (1 + 2 * F7.rho) * pow(3, -1, 7) % 7 == 4
    assert torsion3.ga_orbit(F7, 4) == [2, 4, 5, 6]
    with pytest.raises(ExcludedParameter):
        torsion3.ga_action(F7, 0)


@pytest.mark.parametrize("p", [7, 13])
def test_ga_images_are_isomorphic(p):
    F = make_field(p)
    for a in torsion3.noncyclic_domain(F):
        Ea = torsion3.noncyclic_curve(F, a)
        for b in torsion3.ga_orbit(F, a):
            assert are_isomorphic(Ea, torsion3.noncyclic_curve(F, b)) is not None


def test_ga_random_parameters_f13():
    rng = random.Random(13)
    dom = torsion3.noncyclic_domain(F13)
    for _ in range(100):
        a = rng.choice(dom)
        Ea = torsion3.noncyclic_curve(F13, a)
        for b in torsion3.ga_orbit(F13, a):
            assert are_isomorphic(Ea, torsion3.noncyclic_curve(F13, b)) is not None


@pytest.mark.parametrize("p", [7, 13, 19, 31, 37])
def test_ga_group_is_tetrahedral(p):
    g = torsion3.ga_group_structure(make_field(p))
    assert g.closed and g.order == 12 and not g.abelian
    assert g.element_orders == {1: 1, 2: 3, 3: 8}
    assert g.name == "A4"


def test_burnside_examples():
    assert torsion3.burnside_count(F7) == 1
    assert torsion3.ga_orbits(F7) == [[2, 4, 5, 6]]
    assert torsion3.burnside_count(F13) == 2
    with pytest.raises(WrongFieldClass):
        torsion3.burnside_count(F5)


@pytest.mark.parametrize("p", [p for p in range(7, 200, 6) if all(p % q for q in range(2, p))])
def test_burnside_formula(p):
    F = make_field(p)
    rep = torsion3.burnside_report(F)
    assert rep.orbit_count == rep.burnside_direct == rep.burnside_table == rep.formula
    wrong = rep.wrong_table_entries
    assert [(e.index, e.label) for e in wrong] == [(4, "1/3")]
    # the map -(1+rho)(3a-1-rho)/3 has exactly one fixed point, rho/(3(1-rho^2))
    r = F.rho
    true_fixed = r * pow(3 * (1 - r * r), -1, p) % p
    assert rep.fixed_counts[4] == 1
    assert _literal(4, true_fixed, p, r) == true_fixed


@pytest.mark.parametrize("p", [7, 13])
def test_burnside_matches_census(p):
    assert torsion3.burnside_count(make_field(p)) == len(oracle.census(make_field(p), "full"))


# -- the 3-division quartic -------------------------------------------------------


def test_skolem_examples():
    assert torsion3.skolem_pattern(F7, 0, 2) == (1, 1, 1, 1)
    assert torsion3.skolem_pattern(F7, 5, 2) == (1, 3)
    with pytest.raises(WrongFieldClass):
        torsion3.skolem_pattern(F5, 1, 1)
    with pytest.raises(SingularCurve):
        torsion3.skolem_pattern(F7, 0, 0)


@pytest.mark.parametrize("p", [7, 13, 19, 31])
def test_skolem_exhaustive(p):
    F = make_field(p)
    for A, B in _short_pairs(p):
        assert torsion3.skolem_pattern(F, A, B) == torsion3.psi3_pattern(F, A, B)


@pytest.mark.parametrize("p, wrong", [(7, 3), (13, 0), (19, 33), (31, 95)])
def test_skolem_printed_shift_disagreements(p, wrong):
    F = make_field(p)
    bad = sum(
        torsion3.skolem_pattern(F, A, B, "printed") != torsion3.psi3_pattern(F, A, B)
        for A, B in _short_pairs(p)
    )
    assert bad == wrong


@pytest.mark.parametrize("p", [7, 11, 13, 17, 19, 23, 29, 31])
def test_twist_preserves_psi3_pattern(p):
    F = make_field(p)
    for A, B in _short_pairs(p):
        assert torsion3.psi3_pattern(F, A, B) == torsion3.psi3_pattern(F, *quadratic_twist(F, A, B))


# -- twists -------------------------------------------------------------------------


def test_twist_noncyclic_p7():
    reps = torsion3.twist_representatives(F7, FamilyKind.TWIST_NONCYCLIC)
    assert len(reps) == 1 and reps[0].short == (0, 5) and reps[0].partner == (0, 2)
    E = reps[0].curve(F7)
    assert oracle.count_points(E) == 7 and oracle.count_points(E, 2) == 63
    assert len(oracle.rational_3torsion(E)) == 1
    subs = oracle.stable_order3_subgroups(E)
    assert [s.abscissa for s in subs] == [0, 1, 2, 4]
    assert not any(s.pointwise_rational for s in subs)


@pytest.mark.parametrize("p", [7, 13])
@pytest.mark.parametrize("kind, nsub", [(FamilyKind.TWIST_CYCLIC, 1), (FamilyKind.TWIST_NONCYCLIC, 4)])
def test_twist_families(p, kind, nsub):
    F = make_field(p)
    reps = torsion3.twist_representatives(F, kind)
    expected = (2 * p + 4) // 3 if kind is FamilyKind.TWIST_CYCLIC else (p + 12 - p % 12) // 12
    assert len(reps) == expected
    idx = oracle.class_index(oracle.short_iso_classes(F))
    assert len({idx[t.short] for t in reps}) == len(reps)
    for t in reps:
        E = t.curve(F)
        assert oracle.count_points(E) % 3 != 0
        assert oracle.count_points(E, 2) % 3 == 0
        r = torsion3.classify(E)
        assert len(r.stable_subgroups) == nsub and r.pointwise_count == 0
        assert torsion3.psi3_pattern(F, *t.short) == torsion3.psi3_pattern(F, *t.partner)
        assert r.family.kind is kind


def test_twist_families_need_q1():
    with pytest.raises(WrongFieldClass):
        torsion3.twist_representatives(F5, FamilyKind.TWIST_CYCLIC)


# -- classify ------------------------------------------------------------------------


def test_classify_examples():
    r = torsion3.classify(Curve.general(F7, 0, 0, 1, 0, 0))
    assert (r.point_count, r.rational_3torsion_order, r.trace) == (9, 9, -1)
    assert r.psi3_pattern == (1, 1, 1, 1)
    assert len(r.stable_subgroups) == 4 and r.pointwise_count == 4
    assert r.family.kind is FamilyKind.NONCYCLIC

    r = torsion3.classify(Curve.short(F7, 0, 5))
    assert (r.point_count, r.rational_3torsion_order) == (7, 1)
    assert len(r.stable_subgroups) == 4 and r.nonpointwise_count == 4

    r = torsion3.classify(Curve.general(F5, 1, 0, 1, 0, 0))
    assert len(r.stable_subgroups) == 2 and r.pointwise_count == 1
    assert (r.family.a, r.family.i, r.family.kind) == (1, 0, FamilyKind.CYCLIC)

    with pytest.raises(SingularCurve):
        torsion3.classify(Curve(F7, 3, 0, 1, 0, 0))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_report_invariants(p):
    F = make_field(p)
    K = F.ext
    for cls in oracle.census(F):
        r = torsion3.classify_checked(cls.report.curve)
        assert r.rational_3torsion_order in (1, 3, 9)
        t = r.trace
        if p % 3 == 1:
            assert (r.point_count_fp2 % 3 == 0) == (t % 3 in (1, 2))
        else:
            assert (r.point_count_fp2 % 3 == 0) == (r.point_count % 3 == 0)
        E = r.curve
        for s in r.stable_subgroups:
            x, y = s.generator
            assert x.is_base() and x.c0 == s.abscissa
            if not s.pointwise_rational:
                lin = K.add(K.mul(K.embed(E.a1), x), K.embed(E.a3))
                assert K.conj(y) == K.neg(K.add(y, lin))
        if r.family is not None and r.family.kind is FamilyKind.CYCLIC:
            assert are_isomorphic(E, torsion3.family_curve(F, r.family.a, r.family.i)) is not None


def test_report_to_dict():
    d = torsion3.classify(Curve.short(F7, 0, 5)).to_dict()
    assert d["curve"] == {"p": 7, "general": [0, 0, 0, 0, 5], "short": [0, 5]}
    assert d["family"] == {"a": 2, "i": 0, "kind": "twist-noncyclic"}
    assert d["group"] == [7, 1]
