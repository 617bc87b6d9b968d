import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critblock.acceptance import oracle_section_rank
from critblock.polyring import LinearForm, Poly, parse_poly
from critblock.rootdata import build_root_datum
from critblock.structalg import (
    Edge,
    MomentGraph,
    Section,
    WallError,
    build_moment_graph,
    casimir_scalar,
    casimir_section,
    graded_ranks,
    intersection_check,
    is_section,
    jantzen_difference,
    restriction_compatible,
    section_space_basis,
    subgeneric_generators,
    verify_generation,
)
from critblock.weights import (
    AffineWeight,
    DeformationPoint,
    Window,
    arrow_down,
    block_window,
    chain,
    finite_shifted_pairing,
)
from oracles import substitution_section_rank

A1, A2, B2, G2 = (build_root_datum(*t) for t in (("A", 1), ("A", 2), ("B", 2), ("G", 2)))
CENTRAL, GENERIC = DeformationPoint.central(), DeformationPoint.generic()


def crit(d, *fin, dcoef=0):
    return AffineWeight.critical(d, fin, dcoef)


def lf(*c):
    return LinearForm(tuple(Fraction(x) for x in c))


def graph_for(d, lam, point, radius):
    return build_moment_graph(d, block_window(d, lam, point, radius), point)


def a1_chain(n):
    d = A1
    point = DeformationPoint.subgeneric(d, (1,))
    below = (n - 1) // 2
    ws = chain(d, crit(d, 0), (1,), below, n - 1 - below)
    return build_moment_graph(d, Window.from_weights(d, ws), point)


def two_vertex_a2():
    w0, w1 = crit(A2, 0, 0), crit(A2, 1, 0)
    return MomentGraph(A2, (w0, w1), (Edge(0, 1, lf(1, 0), (1, 0)),), CENTRAL)


# moment graphs -------------------------------------------------------------

def test_build_examples():
    g = graph_for(A1, crit(A1, 0), DeformationPoint.subgeneric(A1, (1,)), 2)
    assert len(g.vertices) == 5 and len(g.edges) == 4
    assert all(e.label == lf(1) for e in g.edges)
    degree = [sum(v in (e.lower, e.upper) for e in g.edges) for v in range(5)]
    assert sorted(degree) == [1, 1, 2, 2, 2]

    assert graph_for(A2, crit(A2, 0, 0), GENERIC, 3).edges == ()

    lam = crit(A2, 0, 0)
    star = graph_for(A2, lam, CENTRAL, 1)
    at_lam = {e.root: e for e in star.edges if e.upper == 0}
    assert set(at_lam) == {(1, 0), (0, 1), (1, 1)}
    assert {str(e.label) for e in at_lam.values()} == {"x1", "x2", "x1 + x2"}
    for alpha, e in at_lam.items():
        assert star.vertices[e.lower] == arrow_down(A2, alpha, lam)


def test_graph_invariants_on_central_windows():
    for d, lam in ((A2, crit(A2, 0, 0)), (B2, crit(B2, 1, 0)), (G2, crit(G2, 0, 0))):
        g = graph_for(d, lam, CENTRAL, 2)
        pairs = set()
        for e in g.edges:
            assert e.lower != e.upper and not e.label.is_zero()
            key = (frozenset((e.lower, e.upper)), e.label.coeffs)
            assert key not in pairs
            pairs.add(key)
            assert arrow_down(d, e.root, g.vertices[e.upper]) == g.vertices[e.lower]


def test_wall_vertices_have_no_edges():
    g = graph_for(A1, crit(A1, -1), CENTRAL, 3)
    assert len(g.vertices) == 1 and g.edges == ()


# sections ------------------------------------------------------------------

def test_is_section_examples():
    g = a1_chain(5)
    x1 = parse_poly("x1", 1)
    assert is_section(g, Section.constant(g, x1 * x1 + 3))
    for kappa in subgeneric_generators(g)[1:]:
        assert is_section(g, kappa)
    two = two_vertex_a2()
    bad = Section({0: Poly.zero(2), 1: parse_poly("x2", 2)})
    check = is_section(two, bad)
    assert not check and check.edge == 0 and check.residue == parse_poly("x2", 2)
    with pytest.raises(ValueError):
        is_section(two, Section({0: Poly.zero(2)}))


def test_basis_examples():
    single = MomentGraph(A2, (crit(A2, 0, 0),), (), CENTRAL)
    assert section_space_basis(single, 2).rank == 3
    assert section_space_basis(two_vertex_a2(), 1).rank == 3
    assert section_space_basis(a1_chain(5), 0).rank == 1
    with pytest.raises(ValueError):
        section_space_basis(single, -1)


GRAPHS = {
    "a1-chain-5": lambda: a1_chain(5),
    "a2-star": lambda: graph_for(A2, crit(A2, 0, 0), CENTRAL, 1),
    "b2-central": lambda: graph_for(B2, crit(B2, 0, 0), CENTRAL, 1),
    "g2-central": lambda: graph_for(G2, crit(G2, 0, 0), CENTRAL, 1),
    "b2-subgeneric": lambda: graph_for(B2, crit(B2, 1, 0), DeformationPoint.subgeneric(B2, (1, 1)), 2),
}


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_basis_against_oracles(name):
    g = GRAPHS[name]()
    for d in range(3):
        b = section_space_basis(g, d)
        assert b.rank == substitution_section_rank(g, d) == oracle_section_rank(g, d)
        for s in b.basis:
            assert is_section(g, s)
            assert all(p.is_zero() or p.is_homogeneous(d) for p in s.values.values())
        # reduced echelon: leading entries are 1 in strictly increasing columns
        leads = [next(i for i, c in enumerate(r) if c) for r in b.rows]
        assert leads == sorted(set(leads))
        assert all(b.rows[k][leads[k]] == 1 for k in range(len(leads)))
        assert section_space_basis(g, d).rows == b.rows


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(GRAPHS)), st.integers(0, 2), st.data())
def test_products_of_sections_are_sections(name, deg, data):
    g = GRAPHS[name]()
    b1 = section_space_basis(g, deg).basis
    b2 = section_space_basis(g, 1).basis
    s = data.draw(st.sampled_from(b1))
    t = data.draw(st.sampled_from(b2))
    assert is_section(g, s * t)
    assert is_section(g, s * 3 + s)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(GRAPHS)), st.integers(0, 2), st.data())
def test_rank_monotone_in_edges_and_isolated_vertices(name, deg, data):
    g = GRAPHS[name]()
    keep = data.draw(st.lists(st.booleans(), min_size=len(g.edges), max_size=len(g.edges)))
    fewer = MomentGraph(g.datum, g.vertices, tuple(e for e, k in zip(g.edges, keep) if k), g.point)
    full_rank = section_space_basis(g, deg).rank
    assert section_space_basis(fewer, deg).rank >= full_rank
    extra = crit(g.datum, *([17] * g.datum.rank), dcoef=99)
    bigger = g.add_vertex(extra)
    assert section_space_basis(bigger, deg).rank == full_rank + comb(deg + g.nvars - 1, g.nvars - 1)


def test_parallel_matches_sequential():
    g = graph_for(A2, crit(A2, 0, 0), CENTRAL, 2)
    seq = graded_ranks(g, 3)
    par = graded_ranks(g, 3, workers=3)
    assert [b.rows for b in seq] == [b.rows for b in par]
    assert [b.rank for b in seq] == [1, 10, 27, 48]


def test_restriction_between_nested_windows():
    lam = crit(A2, 0, 0)
    outer = graph_for(A2, lam, CENTRAL, 2)
    inner = graph_for(A2, lam, CENTRAL, 1)
    for d in range(3):
        assert restriction_compatible(outer, inner, d)
    sub = DeformationPoint.subgeneric(A1, (1,))
    assert restriction_compatible(graph_for(A1, crit(A1, 0), sub, 3), graph_for(A1, crit(A1, 0), sub, 1), 2)


# subgeneric generators ------------------------------------------------------

@pytest.mark.parametrize("n,count", [(1, 1), (3, 3), (5, 5)])
def test_generator_counts(n, count):
    g = a1_chain(n)
    gens = subgeneric_generators(g)
    assert len(gens) == count
    assert gens[0] == Section.constant(g, 1)
    assert all(is_section(g, s) for s in gens)


def test_kappa_shape():
    g = a1_chain(3)
    x1 = parse_poly("x1", 1)
    nonzero = [[i for i in range(3) if not s[i].is_zero()] for s in subgeneric_generators(g)[1:]]
    assert all(len(ids) == 1 for ids in nonzero)
    assert all(s[ids[0]] == x1 for s, ids in zip(subgeneric_generators(g)[1:], nonzero))


def test_generators_reject_non_chains():
    with pytest.raises(ValueError):
        subgeneric_generators(graph_for(A2, crit(A2, 0, 0), CENTRAL, 1))
    sub = DeformationPoint.subgeneric(A1, (1,))
    ws = chain(A1, crit(A1, 0), (1,), 0, 3)
    broken = build_moment_graph(A1, Window.from_weights(A1, [ws[0], ws[2]]), sub)
    with pytest.raises(ValueError, match="chain"):
        subgeneric_generators(broken)


@pytest.mark.parametrize("n,dmax", [(1, 2), (2, 2), (4, 3), (6, 3)])
def test_verify_generation(n, dmax):
    report = verify_generation(a1_chain(n), dmax)
    assert report.ok
    assert report.ranks[0] == (1, 1)


def test_verify_generation_rank_two_chain():
    d = B2
    lam = crit(d, 2, 1)
    ws = chain(d, lam, (0, 1), 2, 2)
    g = build_moment_graph(d, Window.from_weights(d, ws), DeformationPoint.subgeneric(d, (0, 1)))
    report = verify_generation(g, 3)
    assert report.ok
    assert all(report.ranks[k][1] == oracle_section_rank(g, k) for k in range(4))


# intersection ---------------------------------------------------------------

def test_intersection_examples():
    rep = intersection_check(graph_for(A2, crit(A2, 0, 0), CENTRAL, 1), 2)
    assert rep.ok and set(rep.roots) == {(1, 0), (0, 1), (1, 1)}
    gen = graph_for(A2, crit(A2, 0, 0), GENERIC, 1)
    gen = gen.add_vertex(crit(A2, 1, 1))
    rep = intersection_check(gen, 2)
    assert rep.ok and rep.ranks[2] == (6, 6)
    rep = intersection_check(a1_chain(5), 2)
    assert rep.ok and rep.roots == ((1,),)


# Casimir and Jantzen ---------------------------------------------------------

def test_casimir_examples():
    p = lambda t: parse_poly(t, 1)  # noqa: E731
    assert casimir_scalar(A1, crit(A1, 0)) == p("1/2*x1^2 + x1")
    assert casimir_scalar(A1, crit(A1, -1)) == p("1/2*x1^2 - 1/2")
    assert casimir_scalar(A1, crit(A1, -2)) == p("1/2*x1^2 - x1")
    assert casimir_scalar(A1, crit(A1, 0)) - casimir_scalar(A1, crit(A1, -2)) == p("2*x1")
    with pytest.raises(ValueError):
        casimir_scalar(A1, AffineWeight((0,), 0, 0))


def test_casimir_sections():
    for g in (a1_chain(5), graph_for(A2, crit(A2, 0, 0), CENTRAL, 1), MomentGraph(A1, (crit(A1, 3),), (), CENTRAL)):
        assert is_section(g, casimir_section(g))


def test_jantzen_examples():
    lam = crit(A1, 0)
    assert jantzen_difference(A1, lam, (1,)) == (1, lf(1))
    assert jantzen_difference(A1, arrow_down(A1, (1,), lam), (1,))[0] == -1
    with pytest.raises(WallError):
        jantzen_difference(A1, crit(A1, -1), (1,))


def test_jantzen_sweep():
    rng = random.Random(7)
    for d in (A1, A2, B2, G2):
        for _ in range(100):
            alpha = rng.choice(d.positive_roots)
            mu = crit(d, *[rng.randint(-7, 7) for _ in range(d.rank)], dcoef=rng.randint(-3, 3))
            if finite_shifted_pairing(d, mu, alpha) == 0:
                continue
            k, form = jantzen_difference(d, mu, alpha)
            assert k != 0
