import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld_covers.algebra import GF, CapExceeded, Poly, level_over, parse_poly
from drinfeld_covers.drinfeld import (
    AFieldStructure,
    DrinfeldModule2,
    aut_group,
    are_isomorphic,
    expected_torsion_size,
    is_coprime_to_characteristic,
    is_morphism,
    j_invariant,
    phi_of,
    torsion_kernel,
    torsion_structure,
)
from drinfeld_covers.ore import OrePoly

from oracles import additive_eval, horner


@pytest.fixture(scope="module")
def phi():
    F4 = GF(4)
    return DrinfeldModule2.over(F4, 2, F4.generator, 1, 1)


def A2():
    return GF(2)


def test_phi_T(phi):
    assert phi.phi_T.format() == "t^2+t+w"
    assert phi_of(phi, parse_poly(A2(), "T")) == phi.phi_T


def test_phi_T_squared(phi):
    assert phi_of(phi, parse_poly(A2(), "T^2")).format() == "t^4+t^2+t+w+1"


def test_phi_of_one(phi):
    assert phi_of(phi, Poly.const(A2(), 1)) == OrePoly.const(phi.L, 2, 1)


def test_phi_of_rejects_foreign_polynomial(phi):
    with pytest.raises(ValueError):
        phi_of(phi, parse_poly(GF(4), "T"))


def random_apoly(rng, Fq, max_deg=3):
    return Poly(Fq, [rng.randrange(Fq.order) for _ in range(rng.randint(1, max_deg + 1))])


@pytest.mark.parametrize("q,k", [(2, 2), (4, 1), (3, 2), (4, 2)])
def test_ring_hom_and_constant_term(q, k):
    rng = random.Random(q * 7 + k)
    F = GF(q)
    L = level_over(F, k)
    for _ in range(8):
        mod = DrinfeldModule2.over(L, q, rng.randrange(L.order), rng.randrange(L.order), rng.randrange(1, L.order))
        for _ in range(5):
            f, g = random_apoly(rng, F), random_apoly(rng, F)
            pf, pg = phi_of(mod, f), phi_of(mod, g)
            assert phi_of(mod, f * g) == pf * pg
            assert phi_of(mod, f + g) == pf + pg
            assert pf.constant_term == horner(L, f.coeffs, mod.base.theta)
            if f:
                assert pf.degree == 2 * f.degree


@pytest.mark.parametrize(
    "g,delta,expected",
    [(1, 1, "1"), (0, 1, "0"), (0, 3, "0"), ("w", "w^2", "w")],
)
def test_j_invariant_examples(g, delta, expected):
    from drinfeld_covers.algebra import parse_element

    F4 = GF(4)
    mod = DrinfeldModule2.over(F4, 2, F4.generator, parse_element(F4, str(g)), parse_element(F4, str(delta)))
    assert F4.format(j_invariant(mod)) == expected


def test_delta_zero_rejected():
    F4 = GF(4)
    with pytest.raises(ValueError):
        DrinfeldModule2.over(F4, 2, 1, 1, 0)


def test_morphism_examples(phi):
    L, q = phi.L, phi.q
    assert is_morphism(OrePoly.const(L, q, 1), phi, phi, confirm=3)
    assert is_morphism(OrePoly(L, q), phi, phi)
    for c in range(1, L.order):
        g2 = L.mul(L.pow(c, q - 1), phi.g)
        d2 = L.mul(L.pow(c, q * q - 1), phi.delta)
        other = DrinfeldModule2(phi.base, g2, d2)
        # phi_T c = c phi2_T by the twist rule
        u = OrePoly.const(L, q, c)
        assert is_morphism(u, phi, other, confirm=2)


def test_endomorphism_phi_a_commutes(phi):
    # phi_a is an endomorphism for every a
    u = phi_of(phi, parse_poly(A2(), "T^2+1"))
    assert is_morphism(u, phi, phi, confirm=2)


@pytest.mark.parametrize("q", [4, 5])
def test_aut_dichotomy_exhaustive(q):
    F = GF(q)
    sizes = {}
    for theta, g, delta in itertools.product(range(q), range(q), range(1, q)):
        mod = DrinfeldModule2.over(F, q, theta, g, delta)
        E, auts = aut_group(mod, 2)
        assert 1 in auts
        assert all(E.mul(a, b) in auts for a in auts for b in auts)
        sizes[j_invariant(mod) == 0] = sizes.get(j_invariant(mod) == 0, set()) | {len(auts)}
    assert sizes == {True: {q * q - 1}, False: {q - 1}}


def test_aut_examples():
    F4 = GF(4)
    assert len(aut_group(DrinfeldModule2.over(F4, 4, 0, 1, 1), 2)[1]) == 3
    assert len(aut_group(DrinfeldModule2.over(F4, 4, 0, 0, 1), 2)[1]) == 15


def test_aut_cap():
    F4 = GF(4)
    with pytest.raises(CapExceeded):
        aut_group(DrinfeldModule2.over(F4, 4, 0, 1, 1), 9)


def test_isomorphism_classification_by_j():
    # over F_4 with q = 2 every pair with equal j is isomorphic over F_64 (cube roots exist)
    F4 = GF(4)
    base = AFieldStructure(F4, 2, F4.generator)
    mods = [DrinfeldModule2(base, g, d) for g in range(4) for d in range(1, 4)]
    for a in mods:
        for b in mods:
            E, u = are_isomorphic(a, b, 3)
            assert (u is not None) == (j_invariant(a) == j_invariant(b))
            if u is not None:
                # symmetric: the inverse works the other way
                assert is_morphism(OrePoly.const(E, 2, E.inv(u)), b.base_change(E), a.base_change(E))


def test_isomorphic_identity(phi):
    E, u = are_isomorphic(phi, phi)
    assert u == 1


def test_isomorphic_constructed_pair():
    F16 = level_over(GF(4), 2)
    base = AFieldStructure(F16, 4, 5)
    c = 7
    a = DrinfeldModule2(base, 1, 1)
    b = DrinfeldModule2(base, F16.pow(c, 3), F16.pow(c, 15))
    E, u = are_isomorphic(a, b)
    assert u is not None and is_morphism(OrePoly.const(E, 4, u), a, b)
    assert F16.pow(u, 3) == F16.pow(c, 3)


# -- torsion -------------------------------------------------------------------


def test_characteristic(phi):
    chi = phi.base.characteristic
    assert chi.format() == "T^2+T+1"
    assert phi.base.gamma(chi) == 0


def test_T_torsion(phi):
    tm = torsion_kernel(phi, parse_poly(A2(), "T"))
    assert tm.field.order == 16
    assert len(tm.points) == 4
    assert [d.format() for d in tm.structure] == ["T", "T"]
    E = tm.field
    w2 = GF(4).mul(GF(4).generator, GF(4).generator)
    assert w2 in tm.points
    # the other generator is a root of X^2 + w^2 X + w^2
    others = [r for r in tm.points if r not in (0, w2)]
    assert any(E.add(E.add(E.mul(r, r), E.mul(w2, r)), w2) == 0 for r in others)


def test_T2_torsion(phi):
    tm = torsion_kernel(phi, parse_poly(A2(), "T^2"))
    assert len(tm.points) == 16
    assert [d.format() for d in tm.structure] == ["T^2", "T^2"]


def test_mixed_torsion(phi):
    tm = torsion_kernel(phi, parse_poly(A2(), "T^2+T"))
    assert len(tm.points) == 16
    assert [d.format() for d in tm.structure] == ["T^2+T", "T^2+T"]


def test_trivial_torsion(phi):
    tm = torsion_kernel(phi, Poly.const(A2(), 1))
    assert tm.points == (0,) and tm.structure == ()


def test_characteristic_torsion_drops(phi):
    chi = phi.base.characteristic
    assert not is_coprime_to_characteristic(phi, chi)
    tm = torsion_kernel(phi, chi)
    assert len(tm.points) < 2 ** (2 * chi.degree)
    assert len(tm.points) == expected_torsion_size(phi, chi)


@pytest.mark.parametrize("f", ["T", "T+1", "T^2", "T^2+T"])
def test_torsion_against_brute_force(phi, f):
    fp = parse_poly(A2(), f)
    tm = torsion_kernel(phi, fp)
    E = tm.field
    P = phi_of(phi, fp)
    brute = [x for x in E.elements() if additive_eval(E, 2, P.coeffs, x) == 0]
    assert list(tm.points) == brute
    pts = set(tm.points)
    assert all(E.add(x, y) in pts for x in pts for y in pts)
    assert len(pts) == 2 ** (2 * fp.degree)


def test_torsion_explicit_k_incomplete(phi):
    tm = torsion_kernel(phi, parse_poly(A2(), "T"), k=1)
    assert not tm.complete and len(tm.points) < 4


def test_torsion_structure_rejects_non_closed(phi):
    E = level_over(phi.L, 2)
    with pytest.raises(ValueError):
        torsion_structure([0, 1, 2], phi.base_change(E), parse_poly(A2(), "T"))


def test_torsion_q4():
    F16 = level_over(GF(4), 2)
    mod = DrinfeldModule2.over(F16, 4, 8, 3, 1)
    f = parse_poly(GF(4), "T")
    assert is_coprime_to_characteristic(mod, f)
    tm = torsion_kernel(mod, f)
    assert len(tm.points) == 16
    assert [d.format() for d in tm.structure] == ["T", "T"]


def test_record_round_trip(phi):
    rec = phi.to_record()
    assert rec == {"q": 2, "tower": ["T^2+T+1"], "theta": "w", "g": "1", "delta": "1"}
    assert DrinfeldModule2.from_record(rec) == phi


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15), st.integers(1, 15), st.lists(st.integers(0, 3), max_size=3))
def test_degree_law_q4(theta, g, delta, coeffs):
    F16 = level_over(GF(4), 2)
    mod = DrinfeldModule2.over(F16, 4, theta, g, delta)
    f = Poly(GF(4), coeffs)
    P = phi_of(mod, f)
    assert P.degree == (2 * f.degree if f else -1)
    assert P.constant_term == f(theta, F16)
