from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from critblock.rootdata import build_root_datum
from critblock.weights import (
    AffineWeight,
    DeformationPoint,
    NotCriticalError,
    Order,
    Window,
    affine_pairing,
    arrow_down,
    arrow_up,
    block_window,
    chain,
    classify_block,
    compare,
    dot_reflect,
    finite_shifted_pairing,
    integral_roots,
    leq,
)

A1, A2, B2, G2 = (build_root_datum(*t) for t in (("A", 1), ("A", 2), ("B", 2), ("G", 2)))
TYPES = [A1, A2, B2, G2, build_root_datum("C", 3)]
F = Fraction


def crit(d, *fin, dcoef=0):
    return AffineWeight.critical(d, fin, dcoef)


@st.composite
def critical_weights(draw, d, integral=True):
    coord = st.integers(-6, 6) if integral else st.fractions(-6, 6, max_denominator=3)
    fin = draw(st.lists(coord, min_size=d.rank, max_size=d.rank))
    return crit(d, *fin, dcoef=draw(st.integers(-4, 4)))


# pairings and reflections -------------------------------------------------

def test_affine_pairing_examples():
    assert affine_pairing(A1, crit(A1, 0), (1,), 5) == 1
    assert affine_pairing(A1, AffineWeight((0,), 0, 0), (1,), 1) == 3
    assert affine_pairing(A1, crit(A1, -1), (1,), 0) == 0


def test_dot_reflect_examples():
    lam = crit(A1, 0)
    assert dot_reflect(A1, lam, (1,), 0) == crit(A1, -2)
    wall = crit(A1, -1)
    for alpha in ((1,), (-1,)):
        for n in range(-3, 4):
            assert dot_reflect(A1, wall, alpha, n) == wall
    assert dot_reflect(A1, lam, (-1,), 1) == crit(A1, -2, dcoef=1)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(TYPES), st.data())
def test_dot_reflect_involution_and_rho_independence(d, data):
    lam = data.draw(critical_weights(d, integral=False))
    alpha = data.draw(st.sampled_from(d.roots))
    n = data.draw(st.integers(-3, 3))
    once = dot_reflect(d, lam, alpha, n)
    assert dot_reflect(d, once, alpha, n) == lam
    assert once.level == lam.level
    rho_d = data.draw(st.fractions(-5, 5, max_denominator=4))
    assert dot_reflect(d, lam, alpha, n, rho_d=rho_d) == once


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(TYPES), st.data())
def test_critical_pairing_independent_of_n(d, data):
    lam = data.draw(critical_weights(d, integral=False))
    alpha = data.draw(st.sampled_from(d.roots))
    values = {affine_pairing(d, lam, alpha, n) for n in range(-4, 5)}
    assert values == {finite_shifted_pairing(d, lam, alpha)}


# order -------------------------------------------------------------------

def test_compare_examples():
    lam = crit(A1, 0)
    assert compare(A1, lam, crit(A1, -2)) is Order.GREATER
    assert compare(A1, lam, crit(A1, -2, dcoef=1)) is Order.LESS
    lam2 = crit(A2, 0, 0)
    # alpha1 - alpha2 in fundamental-weight coordinates is (3, -3)
    assert compare(A2, lam2, crit(A2, 3, -3)) is Order.INCOMPARABLE
    assert compare(A2, lam2, lam2) is Order.EQUAL
    with pytest.raises(ValueError, match="different levels"):
        compare(A1, lam, AffineWeight((0,), 0, 0))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([A1, A2, B2]), st.data())
def test_leq_is_a_partial_order(d, data):
    base = data.draw(critical_weights(d))
    # nearby weights so comparable triples actually occur
    def near():
        c = data.draw(st.lists(st.integers(0, 2), min_size=d.rank + 1, max_size=d.rank + 1))
        fin = d.to_weight([c[i + 1] - c[0] * d.theta[i] for i in range(d.rank)])
        return base.shift(fin, c[0])

    x, y, z = base, near(), near()
    assert leq(d, x, x)
    if leq(d, x, y) and leq(d, y, x):
        assert x == y
    if leq(d, x, y) and leq(d, y, z):
        assert leq(d, x, z)
    # x <= y for every y built from nonnegative affine simple-root combinations
    assert leq(d, x, y)


# arrows ------------------------------------------------------------------

def test_arrow_examples():
    lam = crit(A1, 0)
    assert arrow_down(A1, (1,), lam) == crit(A1, -2)
    assert arrow_up(A1, (1,), lam) == crit(A1, -2, dcoef=1)
    assert arrow_down(A1, (1,), crit(A1, -1)) == crit(A1, -1)
    assert arrow_up(A1, (1,), crit(A1, -1)) == crit(A1, -1)
    assert arrow_down(A1, (1,), arrow_down(A1, (1,), lam)) == crit(A1, 0, dcoef=-1)
    # negative roots act through their positive counterpart
    assert arrow_down(A1, (-1,), lam) == arrow_down(A1, (1,), lam)


def test_arrow_errors():
    with pytest.raises(NotCriticalError):
        arrow_down(A1, (1,), AffineWeight((0,), 0, 0))
    with pytest.raises(ValueError, match="not integral"):
        arrow_down(A1, (1,), crit(A1, F(1, 2)))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(TYPES), st.data())
def test_arrows_inverse_and_monotone(d, data):
    lam = data.draw(critical_weights(d))
    alpha = data.draw(st.sampled_from(d.positive_roots))
    assume(finite_shifted_pairing(d, lam, alpha) != 0)
    down, up = arrow_down(d, alpha, lam), arrow_up(d, alpha, lam)
    assert arrow_up(d, alpha, down) == lam
    assert arrow_down(d, alpha, up) == lam
    assert compare(d, down, lam) is Order.LESS
    assert compare(d, lam, up) is Order.LESS
    assert down.finite == up.finite != lam.finite


# integral roots, windows, classification ----------------------------------

def test_integral_roots_examples():
    central, generic = DeformationPoint.central(), DeformationPoint.generic()
    assert set(integral_roots(A1, crit(A1, 0), central)) == {(1,), (-1,)}
    assert integral_roots(A1, crit(A1, F(1, 2)), central) == ()
    assert integral_roots(A2, crit(A2, 3, -1), generic) == ()
    sub = DeformationPoint.subgeneric(A2, (1, 0))
    assert set(integral_roots(A2, crit(A2, 0, 0), sub)) == {(1, 0), (-1, 0)}
    assert len(integral_roots(A2, crit(A2, 0, 0), central)) == 6


def test_deformation_point_validation():
    assert DeformationPoint.subgeneric(A2, (-1, 0)).root == (1, 0)
    with pytest.raises(ValueError):
        DeformationPoint("subgeneric")
    with pytest.raises(ValueError):
        DeformationPoint.subgeneric(A2, (1, -1))


def test_block_window_examples():
    lam = crit(A1, 0)
    w = block_window(A1, lam, DeformationPoint.subgeneric(A1, (1,)), 2)
    expected = {crit(A1, 0, dcoef=-1), crit(A1, -2), lam, crit(A1, -2, dcoef=1), crit(A1, 0, dcoef=1)}
    assert set(w.weights) == expected and len(w) == 5
    assert w.weights[0] == lam
    for radius in range(4):
        assert block_window(A2, crit(A2, 1, 2), DeformationPoint.generic(), radius).weights == (crit(A2, 1, 2),)
    assert block_window(A1, crit(A1, -1), DeformationPoint.central(), 3).weights == (crit(A1, -1),)


def test_classify_examples():
    a1_lam = crit(A1, 0)
    assert str(classify_block(block_window(A1, a1_lam, DeformationPoint.generic(), 3))) == "generic"
    sub = block_window(A1, a1_lam, DeformationPoint.subgeneric(A1, (1,)), 3)
    assert str(classify_block(sub)) == "subgeneric"
    other = classify_block(block_window(A2, crit(A2, 0, 0), DeformationPoint.central(), 3))
    assert (other.kind, other.count, str(other)) == ("other", 6, "other(6)")


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([A1, A2, B2, G2]), st.data())
def test_subgeneric_windows_are_alternating_chains(d, data):
    alpha = data.draw(st.sampled_from(d.positive_roots))
    lam = data.draw(critical_weights(d))
    assume(finite_shifted_pairing(d, lam, alpha) != 0)
    radius = data.draw(st.integers(0, 5))
    w = block_window(d, lam, DeformationPoint.subgeneric(d, alpha), radius)
    line = chain(d, lam, alpha, radius, radius)
    assert set(w.weights) == set(line) and len(w) == 2 * radius + 1
    fins = [x.finite for x in line]
    assert all(fins[i] == fins[i % 2] for i in range(len(fins)))
    assert len(set(fins)) == min(2, len(fins))


def test_window_validation():
    lam = crit(A1, 0)
    with pytest.raises(ValueError, match="distinct"):
        Window.from_weights(A1, [lam, lam])
    with pytest.raises(ValueError):
        Window.from_weights(A1, [])
    with pytest.raises(NotCriticalError):
        Window.from_weights(A1, [AffineWeight((0,), 1, 0)])
    with pytest.raises(ValueError):
        block_window(A1, lam, DeformationPoint.central(), -1)
