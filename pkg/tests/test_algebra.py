import itertools
import random
from math import gcd as igcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld_covers.algebra import (
    GF,
    CapExceeded,
    ParseError,
    Poly,
    ResidueRing,
    extend_field,
    factor_monic,
    field_from_modulus,
    field_from_tower,
    gcd,
    is_irreducible,
    level_over,
    monic_irreducibles,
    parse_element,
    parse_poly,
    prime_field,
    roots_over,
    smallest_irreducible,
)
from drinfeld_covers.algebra.poly import monic_polys

from oracles import brute_roots, count_irreducibles, naive_pow

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 2), (5, 1), (2, 4), (4, 3), (7, 1)]


def field_of(q, k):
    return level_over(GF(q), k)


# -- finite fields -------------------------------------------------------------


def test_f4_multiplication_table():
    F = GF(4)
    w = F.generator
    assert F.modulus == (1, 1, 1)
    # w^2 = w + 1, w^3 = 1
    assert F.mul(w, w) == w ^ 1
    assert F.mul(w, w ^ 1) == 1
    assert F.mul(w ^ 1, w ^ 1) == w


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_prime_field_matches_integers_mod_p(p):
    F = prime_field(p)
    for a, b in itertools.product(range(p), repeat=2):
        assert F.add(a, b) == (a + b) % p
        assert F.mul(a, b) == (a * b) % p
        assert F.sub(a, b) == (a - b) % p
        if b:
            assert F.mul(F.div(a, b), b) == a


@pytest.mark.parametrize("q,k", FIELDS)
def test_field_axioms_exhaustive_on_units(q, k):
    F = field_of(q, k)
    assert F.order == q**k
    for x in range(1, F.order):
        assert F.mul(x, F.inv(x)) == 1
        assert F.add(x, F.neg(x)) == 0
        assert F.pow(x, F.order - 1) == 1


@pytest.mark.parametrize("q,k", FIELDS)
def test_frobenius_fixed_points_are_subfields(q, k):
    # x^(q^d) = x has exactly q^d solutions when d | k, and q^gcd(d,k) otherwise
    F = field_of(q, k)
    for d in range(1, k + 1):
        fixed = sum(1 for x in F.elements() if F.frobenius(x, d, q) == x)
        assert fixed == q ** igcd(d, k)


@pytest.mark.parametrize("q,k", [(2, 3), (4, 2), (3, 2), (2, 4)])
def test_pow_matches_repeated_multiplication(q, k):
    F = field_of(q, k)
    for x in F.elements():
        for e in (0, 1, 2, 5, F.order + 3):
            assert F.pow(x, e) == naive_pow(F, x, e)


def test_table_and_schoolbook_multiplication_agree():
    F = field_of(4, 2)
    for a, b in itertools.product(F.elements(), repeat=2):
        assert F.mul(a, b) == F._slow_mul(a, b)


def test_large_field_uses_schoolbook():
    F = extend_field(GF(16), 5)  # 2^20 elements, above the table cap
    assert F.order == 1 << 20
    x = F.generator
    assert F.pow(x, F.order - 1) == 1
    assert F.mul(F.inv(x), x) == 1


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_field_ring_laws_f64(data):
    F = field_of(4, 3)
    a, b, c = (data.draw(st.integers(0, F.order - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))


def test_embedding_is_identity_on_ints():
    F4 = GF(4)
    F16 = field_of(4, 2)
    assert F16.contains(F4)
    assert F16.subfield(4) is F4
    for a, b in itertools.product(F4.elements(), repeat=2):
        assert F16.mul(a, b) == F4.mul(a, b)
        assert F16.add(a, b) == F4.add(a, b)


def test_tower_description_and_rebuild():
    F16 = field_of(4, 2)
    assert F16.describe()["tower"] == ["T^2+T+1", "T^2+T+w"]
    rebuilt = field_from_tower(2, [parse_poly(prime_field(2), "T^2+T+1")])
    assert rebuilt is GF(4)


def test_field_from_modulus_rejects_reducible():
    with pytest.raises(ValueError):
        field_from_modulus(prime_field(2), (0, 1, 1))  # T^2 + T


def test_gf_rejects_non_prime_power():
    with pytest.raises(ValueError):
        GF(6)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_is_square_counts(q):
    F = GF(q)
    squares = {F.mul(x, x) for x in range(1, q)}
    assert all(F.is_square(x) == (x in squares) for x in range(1, q))
    assert len(squares) == (q - 1) // 2


# -- polynomials ---------------------------------------------------------------


@pytest.mark.parametrize("q,d", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 1), (4, 2), (5, 2)])
def test_irreducible_count_matches_necklace_formula(q, d):
    F = GF(q)
    assert sum(1 for _ in monic_irreducibles(F, d)) == count_irreducibles(q, d)


@pytest.mark.parametrize("q,d", [(2, 4), (3, 3), (4, 2)])
def test_irreducibility_against_trial_division(q, d):
    F = GF(q)
    small = [g for e in range(1, d // 2 + 1) for g in monic_polys(F, e)]
    for f in monic_polys(F, d):
        has_factor = any(not (f % g) for g in small)
        assert is_irreducible(f) == (not has_factor)


def test_smallest_irreducibles():
    assert smallest_irreducible(GF(4), 2).format() == "T^2+T+w"
    assert smallest_irreducible(prime_field(2), 2).format() == "T^2+T+1"
    assert smallest_irreducible(prime_field(5), 2).format() == "T^2+2"


@pytest.mark.parametrize(
    "q,text,expected",
    [
        (2, "T^2+T", [("T", 1), ("T+1", 1)]),
        (2, "T^5+T^4+1", [("T^2+T+1", 1), ("T^3+T+1", 1)]),
        (4, "T^4+T^2+w+1", [("T^2+T+w", 2)]),
        (5, "T^3", [("T", 3)]),
    ],
)
def test_factor_examples(q, text, expected):
    F = GF(q)
    got = [(g.format(), e) for g, e in factor_monic(parse_poly(F, text))]
    assert got == expected


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=7))
def test_factorization_recomposes(coeffs):
    F = GF(4)
    f = Poly(F, coeffs + [1])
    facs = factor_monic(f)
    prod = Poly.const(F, 1)
    for g, e in facs:
        assert g.is_monic() and is_irreducible(g)
        prod = prod * g**e
    assert prod == f


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=6), st.lists(st.integers(0, 2), min_size=1, max_size=4))
def test_divmod_recomposes(a, b):
    F = GF(3)
    f, g = Poly(F, a), Poly(F, b)
    if not g:
        return
    Q, R = divmod(f, g)
    assert Q * g + R == f
    assert R.degree < g.degree


def test_gcd_is_monic_common_divisor():
    F = GF(2)
    a = parse_poly(F, "T^4+T")
    b = parse_poly(F, "T^3+1")
    g = gcd(a, b)
    assert g.is_monic() and not (a % g) and not (b % g)
    assert g.format() == "T^3+1"


def test_degree_cap_on_factor():
    F = GF(2)
    with pytest.raises(CapExceeded):
        factor_monic(Poly.monomial(F, 1, 9) + Poly.const(F, 1))


# -- roots ---------------------------------------------------------------------


def test_roots_example():
    F = GF(4)
    g = parse_poly(F, "X^3+X+w", "X")
    E, roots = roots_over(g)
    assert E is F and [F.format(r) for r in roots] == ["w+1"]


def test_roots_in_extension():
    F = GF(4)
    g = parse_poly(F, "X^2+(w+1)*X+w^2", "X")
    E, roots = roots_over(g, 2)
    assert E.order == 16 and len(roots) == 2


@pytest.mark.parametrize("q,k", [(2, 3), (4, 2), (3, 2), (5, 1)])
def test_roots_match_brute_force(q, k):
    F = GF(q)
    E = level_over(F, k)
    rng = random.Random(q * 10 + k)
    for _ in range(20):
        coeffs = [rng.randrange(q) for _ in range(rng.randint(1, 5))] + [1]
        _, roots = roots_over(Poly(F, coeffs), k)
        assert roots == brute_roots(E, coeffs)


def test_roots_cap():
    with pytest.raises(CapExceeded):
        roots_over(parse_poly(GF(4), "X^2+w", "X"), 9)


# -- grammar -------------------------------------------------------------------


@pytest.mark.parametrize(
    "q,k,text,canonical",
    [
        (4, 1, "w*w", "w+1"),
        (4, 2, "w2^2", "w2+w"),
        (2, 3, "w^3", "w+1"),
        (5, 1, "-1", "4"),
        (4, 2, "(w+1)*w2 + 1", "(w+1)*w2+1"),
        (3, 2, "2*w+2", "2*w+2"),
    ],
)
def test_element_canonical_format(q, k, text, canonical):
    F = field_of(q, k)
    assert F.format(parse_element(F, text)) == canonical


@pytest.mark.parametrize("q,k", [(2, 2), (4, 2), (3, 2), (2, 4), (5, 1)])
def test_element_round_trip_exhaustive(q, k):
    F = field_of(q, k)
    for x in F.elements():
        assert parse_element(F, F.format(x)) == x


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 15), max_size=6))
def test_poly_round_trip_over_f16(coeffs):
    F = field_of(4, 2)
    f = Poly(F, coeffs)
    assert parse_poly(F, f.format("X"), "X") == f


def test_poly_canonical_output():
    F = GF(4)
    f = parse_poly(F, "1 + w*T + (w+1)*T^2")
    assert f.format() == "(w+1)*T^2+w*T+1"
    assert Poly(F).format() == "0"


@pytest.mark.parametrize("bad", ["", "T^", "T^2+", "(T", "T)", "w$", "1.5", "T^w"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_poly(GF(4), bad)


def test_unknown_symbol():
    with pytest.raises(ParseError):
        parse_element(GF(4), "w2")


# -- residue rings -------------------------------------------------------------


@pytest.mark.parametrize("q,text,units", [(2, "T^2", 2), (2, "T^2+T", 1), (4, "T^2", 12), (3, "T^2+1", 8), (4, "T^2+T", 9)])
def test_residue_units(q, text, units):
    R = ResidueRing(parse_poly(GF(q), text))
    assert len(R.units) == units
    for u in R.units:
        assert R.mul(u, R.inverse[u]) == 1
        assert R.is_unit(u)


def test_residue_tables_match_polynomial_arithmetic():
    F = GF(3)
    f = parse_poly(F, "T^2+1")
    R = ResidueRing(f)
    for a, b in itertools.product(R.elements(), repeat=2):
        assert R.poly(R.mul(a, b)) == (R.poly(a) * R.poly(b)) % f
        assert R.poly(R.add(a, b)) == R.poly(a) + R.poly(b)
        assert R.add(R.sub(a, b), b) == a


def test_reduction_table_is_ring_hom():
    F = GF(2)
    big = ResidueRing(parse_poly(F, "T^3"))
    small = ResidueRing(parse_poly(F, "T^2"))
    t = big.reduction_table(small)
    for a, b in itertools.product(big.elements(), repeat=2):
        assert t[big.mul(a, b)] == small.mul(t[a], t[b])
        assert t[big.add(a, b)] == small.add(t[a], t[b])
    with pytest.raises(ValueError):
        small.reduction_table(big)


def test_residue_cap():
    with pytest.raises(CapExceeded):
        ResidueRing(parse_poly(GF(8), "T^4"))


def test_residue_parse_format_round_trip():
    R = ResidueRing(parse_poly(GF(4), "T^2+T+w"))
    for x in R.elements():
        assert R.parse(R.format(x)) == x
