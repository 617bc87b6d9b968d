import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from critblock.polyring import (
    LinearForm,
    Poly,
    as_fraction,
    count_monomials,
    format_poly,
    monomials,
    parse_poly,
    reduce_mod_linear,
    tau_pair,
    tau_quad,
)
from critblock.rootdata import build_root_datum, pairing

F = Fraction
TYPES = [build_root_datum(*t) for t in (("A", 1), ("A", 2), ("B", 2), ("C", 3), ("G", 2), ("D", 4), ("F", 4))]


def P(text, n=2):
    return parse_poly(text, n)


def lf(*c):
    return LinearForm(tuple(F(x) for x in c))


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def polys(draw, nvars=3, max_deg=3):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)]), rationals, max_size=5
        )
    )
    return Poly(nvars, terms)


@st.composite
def forms(draw, nvars=3):
    c = draw(st.lists(st.integers(-3, 3), min_size=nvars, max_size=nvars).filter(any))
    return lf(*c)


def to_sympy(p: Poly):
    xs = sympy.symbols(f"x1:{p.nvars + 1}")
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.prod([x**e for x, e in zip(xs, m)]) for m, c in p.sorted_terms()),
        sympy.Integer(0),
    ), xs


def test_no_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        Poly(1, {(1,): 0.5})


def test_monomial_order_and_count():
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    for n in range(1, 5):
        for d in range(5):
            assert len(monomials(n, d)) == count_monomials(n, d) == comb(d + n - 1, n - 1)


def test_arithmetic_and_zero_pruning():
    p = P("x1 + x2")
    q = P("x1 - x2")
    assert p * q == P("x1^2 - x2^2")
    assert (p - p).is_zero() and (p - p).sorted_terms() == []
    assert p**3 == p * p * p
    assert P("1/2*x1^2").coefficient((2, 0)) == F(1, 2)
    assert (p * 0).is_zero()
    assert P("x1*x2 + 3").evaluate([2, F(1, 2)]) == 4


def test_reduce_examples():
    assert reduce_mod_linear(P("x1^2 + x1*x2"), lf(1, 0)).is_zero()
    assert reduce_mod_linear(P("x2"), lf(1, 0)) == P("x2")
    assert reduce_mod_linear(P("x1*x2"), lf(1, -1)) == P("x1^2")
    with pytest.raises(ValueError):
        reduce_mod_linear(P("x1"), lf(0, 0))


@settings(max_examples=80, deadline=None)
@given(polys(), polys(), forms(), rationals)
def test_reduce_properties(p, q, ell, c):
    r = reduce_mod_linear(p, ell)
    j = ell.pivot()
    assert all(m[j] == 0 for m, _ in r.sorted_terms())
    assert reduce_mod_linear(r, ell) == r
    assert reduce_mod_linear(p * c + q, ell) == r * c + reduce_mod_linear(q, ell)
    assert reduce_mod_linear(p * q, ell) == reduce_mod_linear(r * reduce_mod_linear(q, ell), ell)
    # p - r lies in (ell): dividing with x_j leading leaves no remainder
    diff, xs = to_sympy(p - r)
    ell_s, _ = to_sympy(ell.to_poly())
    gens = (xs[j],) + tuple(x for i, x in enumerate(xs) if i != j)
    _, rem = sympy.div(diff, ell_s, *gens)
    assert sympy.expand(rem) == 0


def test_tau_examples():
    a1, a2 = build_root_datum("A", 1), build_root_datum("A", 2)
    assert tau_pair(a1, a1.to_weight((1,))) == lf(1)
    assert tau_pair(a1, (0,)).is_zero()
    assert tau_pair(a2, a2.to_weight(a2.theta)) == lf(1, 1)
    assert tau_quad(a1) == P("1/2*x1^2", 1)
    assert tau_quad(a2) == P("2/3*x1^2 + 2/3*x1*x2 + 2/3*x2^2")
    assert tau_quad(a1).evaluate([1]) == F(1, 2)


@pytest.mark.parametrize("d", TYPES, ids=lambda d: d.name)
def test_tau_specialization(d):
    rng = random.Random(d.name)
    for _ in range(100):
        mu = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(d.rank)]
        xi = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(d.rank)]
        point = [pairing(d, mu, d.simple_root(i)) for i in range(d.rank)]
        assert tau_quad(d).evaluate(point) == d.form(mu, mu)
        assert tau_pair(d, xi).evaluate(point) == d.form(xi, mu)
    # simple roots: (alpha_j | tau) = ((alpha_j|alpha_j)/2) x_j
    for j in range(d.rank):
        expected = [F(0)] * d.rank
        expected[j] = d.form_gram[j][j] / 2
        assert tau_pair(d, d.to_weight(d.simple_root(j))).coeffs == tuple(expected)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(TYPES), st.data())
def test_tau_pair_linear(d, data):
    xi = data.draw(st.lists(rationals, min_size=d.rank, max_size=d.rank))
    eta = data.draw(st.lists(rationals, min_size=d.rank, max_size=d.rank))
    c = data.draw(rationals)
    assert tau_pair(d, [c * a + b for a, b in zip(xi, eta)]) == tau_pair(d, xi).scale(c) + tau_pair(d, eta)


@settings(max_examples=80, deadline=None)
@given(polys())
def test_text_and_json_roundtrip(p):
    assert parse_poly(format_poly(p), 3) == p
    assert Poly.from_json(3, p.to_json()) == p


def test_format_examples():
    assert format_poly(P("0")) == "0"
    assert format_poly(P("x1^2 - 1/2*x1*x2 + 3")) == "x1^2 - 1/2*x1*x2 + 3"
    assert format_poly(P("-x2")) == "-x2"
    with pytest.raises(ValueError):
        parse_poly("x3", 2)
    with pytest.raises(ValueError):
        parse_poly("x1 +", 2)
    with pytest.raises(ValueError):
        parse_poly("2.5*x1", 2)


def test_linear_form_helpers():
    a = lf(2, -4)
    assert a.pivot() == 1
    assert a.ratio_to(lf(-1, 2)) == -2
    assert a.ratio_to(lf(1, 0)) is None
    assert a.is_proportional(lf(1, -2))
    assert str(lf(1, 1)) == "x1 + x2"
