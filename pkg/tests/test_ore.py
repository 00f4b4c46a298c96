import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drinfeld_covers.algebra import GF, ParseError, level_over
from drinfeld_covers.ore import OrePoly, parse_ore, to_additive

from oracles import additive_eval

# (q, degree of L over F_q)
RINGS = [(2, 2), (2, 3), (4, 2), (3, 2)]


def ore_strategy(F, q, max_deg=4):
    return st.lists(st.integers(0, F.order - 1), max_size=max_deg + 1).map(lambda c: OrePoly(F, q, c))


@pytest.mark.parametrize("q,k", RINGS)
def test_product_is_composition(q, k):
    # (f*g)(x) = f(g(x)) for every x: the oracle never multiplies twisted polynomials
    F = level_over(GF(q), k)
    rng = random.Random(q + k)
    for _ in range(15):
        f = OrePoly(F, q, [rng.randrange(F.order) for _ in range(rng.randint(1, 4))])
        g = OrePoly(F, q, [rng.randrange(F.order) for _ in range(rng.randint(1, 4))])
        h = f * g
        for x in F.elements():
            assert additive_eval(F, q, h.coeffs, x) == additive_eval(F, q, f.coeffs, additive_eval(F, q, g.coeffs, x))


@pytest.mark.parametrize("q,k", RINGS)
def test_evaluation_is_f_q_linear(q, k):
    F = level_over(GF(q), k)
    f = OrePoly(F, q, [1, F.order - 1, 2 % F.order])
    for x in range(0, F.order, 3):
        for y in range(0, F.order, 5):
            assert f(F.add(x, y)) == F.add(f(x), f(y))
        for c in range(q):
            assert f(F.mul(c, x)) == F.mul(c, f(x))


def test_twist_rule_f4():
    F = GF(4)
    tau = OrePoly.tau(F, 2)
    for a in F.elements():
        assert tau * OrePoly.const(F, 2, a) == OrePoly(F, 2, (0, F.pow(a, 2)))


def test_spec_example_product():
    F = GF(4)
    w = F.generator
    tau = OrePoly.tau(F, 2)
    # tau * w = w^2 tau = (w+1) tau
    assert (tau * OrePoly.const(F, 2, w)).format() == "(w+1)*t"
    assert (OrePoly.const(F, 2, w) * tau).format() == "w*t"


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_ring_laws_f8(data):
    F = level_over(GF(2), 3)
    s = ore_strategy(F, 2)
    a, b, c = data.draw(s), data.draw(s), data.draw(s)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_right_division(data):
    F = level_over(GF(4), 2)
    s = ore_strategy(F, 4, 5)
    f, g = data.draw(s), data.draw(s)
    if not g:
        with pytest.raises(ZeroDivisionError):
            f.right_divmod(g)
        return
    Q, R = f.right_divmod(g)
    assert Q * g + R == f
    assert R.degree < g.degree


def test_degree_additive():
    F = GF(4)
    f = parse_ore(F, 2, "w*t^2+1")
    g = parse_ore(F, 2, "(w+1)*t^3+t")
    assert (f * g).degree == f.degree + g.degree


def test_to_additive():
    F = GF(4)
    f = parse_ore(F, 2, "t^2+t+w")
    assert to_additive(f).format("X") == "X^4+X^2+w*X"
    assert to_additive(OrePoly(F, 2)).format("X") == "0"


@pytest.mark.parametrize("text", ["t^2+t+w", "(w+1)*t^3+w*t", "0", "1", "w"])
def test_format_round_trip(text):
    F = GF(4)
    f = parse_ore(F, 2, text)
    assert parse_ore(F, 2, f.format()) == f


def test_mixed_rings_rejected():
    F4 = GF(4)
    F16 = level_over(F4, 2)
    with pytest.raises(ValueError):
        OrePoly.tau(F4, 2) + OrePoly.tau(F16, 2)
    with pytest.raises(ValueError):
        OrePoly.tau(F4, 2) * OrePoly.tau(F4, 4)


def test_parse_error():
    with pytest.raises(ParseError):
        parse_ore(GF(4), 2, "t^^2")


def test_embed():
    F4 = GF(4)
    F16 = level_over(F4, 2)
    f = parse_ore(F4, 2, "w*t+1")
    g = f.embed(F16)
    for x in F4.elements():
        assert g(x) == f(x)
    with pytest.raises(ValueError):
        parse_ore(F16, 2, "t").embed(F4)
