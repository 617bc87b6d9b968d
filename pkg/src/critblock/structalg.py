"""Moment graphs of block windows and their structure algebras.

A section is a tuple of polynomials, one per vertex, whose difference across
every edge is divisible by the edge label.  The structure algebra is solved
one degree at a time as a rational linear system on monomial coefficients.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg
from .polyring import LinearForm, Poly, monomials, reduce_mod_linear, tau_pair, tau_quad
from .rootdata import Root, RootDatum, coroot_as_linear_form
from .weights import (
    AffineWeight,
    DeformationPoint,
    Window,
    arrow_down,
    arrow_up,
    positive_integral_roots,
    require_critical,
)


class WallError(ValueError):
    """The move is trivial (alpha-down mu = mu)."""


@dataclass(frozen=True)
class Edge:
    lower: int
    upper: int
    label: LinearForm
    root: Root


@dataclass(frozen=True)
class MomentGraph:
    datum: RootDatum
    vertices: tuple[AffineWeight, ...]
    edges: tuple[Edge, ...]
    point: DeformationPoint
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.vertices)})

    @property
    def nvars(self) -> int:
        return self.datum.rank

    def index(self, w: AffineWeight) -> int:
        return self._index[w]

    def __contains__(self, w) -> bool:
        return w in self._index

    def restrict_edges(self, keep: Callable[[Edge], bool]) -> "MomentGraph":
        return MomentGraph(self.datum, self.vertices, tuple(e for e in self.edges if keep(e)), self.point)

    def induced(self, vertices: Sequence[AffineWeight]) -> "MomentGraph":
        """Subgraph on ``vertices`` (new ids follow the given order)."""
        new = {w: i for i, w in enumerate(vertices)}
        edges = []
        for e in self.edges:
            lo, up = self.vertices[e.lower], self.vertices[e.upper]
            if lo in new and up in new:
                edges.append(Edge(new[lo], new[up], e.label, e.root))
        return MomentGraph(self.datum, tuple(vertices), tuple(edges), self.point)

    def add_vertex(self, w: AffineWeight) -> "MomentGraph":
        if w in self._index:
            raise ValueError("vertex already present")
        return MomentGraph(self.datum, self.vertices + (w,), self.edges, self.point)

    def edge_roots(self) -> list[Root]:
        seen = []
        for e in self.edges:
            if e.root not in seen:
                seen.append(e.root)
        return seen


def build_moment_graph(datum: RootDatum, window: Window, point: DeformationPoint) -> MomentGraph:
    """Edges {alpha-down mu, mu} for every positive integral alpha with both ends in the window."""
    vertices = tuple(window.weights)
    index = {w: i for i, w in enumerate(vertices)}
    edges: list[Edge] = []
    for i, mu in enumerate(vertices):
        require_critical(datum, mu)
        for alpha in positive_integral_roots(datum, mu, point):
            lower = arrow_down(datum, alpha, mu)
            if lower == mu or lower not in index:
                continue
            label = coroot_as_linear_form(datum, alpha)
            j = index[lower]
            if any({e.lower, e.upper} == {i, j} and e.label.is_proportional(label) for e in edges):
                continue
            edges.append(Edge(j, i, label, alpha))
    return MomentGraph(datum, vertices, tuple(edges), point)


# sections --------------------------------------------------------------

@dataclass(frozen=True)
class Section:
    values: Mapping[int, Poly]

    def __post_init__(self):
        object.__setattr__(self, "values", dict(sorted(self.values.items())))

    @classmethod
    def constant(cls, graph: MomentGraph, p: Poly | int) -> "Section":
        if not isinstance(p, Poly):
            p = Poly.constant(graph.nvars, p)
        return cls({i: p for i in range(len(graph.vertices))})

    def __getitem__(self, i: int) -> Poly:
        return self.values[i]

    def __mul__(self, other) -> "Section":
        if isinstance(other, Section):
            if other.values.keys() != self.values.keys():
                raise ValueError("sections on different vertex sets")
            return Section({i: p * other.values[i] for i, p in self.values.items()})
        return Section({i: p * other for i, p in self.values.items()})

    __rmul__ = __mul__

    def __add__(self, other: "Section") -> "Section":
        return Section({i: p + other.values[i] for i, p in self.values.items()})

    def __sub__(self, other: "Section") -> "Section":
        return Section({i: p - other.values[i] for i, p in self.values.items()})

    def restrict(self, ids: Sequence[int]) -> "Section":
        return Section({new: self.values[old] for new, old in enumerate(ids)})


@dataclass(frozen=True)
class SectionCheck:
    ok: bool
    edge: int | None = None
    residue: Poly | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_section(graph: MomentGraph, s: Section) -> SectionCheck:
    """Check every edge congruence; reports the first violated edge."""
    if set(s.values) != set(range(len(graph.vertices))):
        raise ValueError("section is not defined exactly on the vertex set")
    for k, e in enumerate(graph.edges):
        r = reduce_mod_linear(s[e.upper] - s[e.lower], e.label)
        if not r.is_zero():
            return SectionCheck(False, k, r)
    return SectionCheck(True)


# graded pieces ----------------------------------------------------------

@dataclass(frozen=True)
class GradedBasis:
    degree: int
    basis: tuple[Section, ...]
    rows: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.basis)


def section_to_vector(s: Section, nvertices: int, monos: Sequence) -> list[Fraction]:
    vec = []
    for v in range(nvertices):
        p = s[v]
        vec.extend(p.coefficient(m) for m in monos)
    return vec


def vector_to_section(vec: Sequence[Fraction], nvertices: int, monos: Sequence, nvars: int) -> Section:
    k = len(monos)
    return Section(
        {v: Poly(nvars, {m: vec[v * k + j] for j, m in enumerate(monos) if vec[v * k + j]}) for v in range(nvertices)}
    )


def constraint_matrix(graph: MomentGraph, degree: int) -> tuple[list[list[Fraction]], int]:
    """Rows say: the reduced edge difference has no surviving monomial."""
    n = graph.nvars
    monos = monomials(n, degree)
    k = len(monos)
    ncols = k * len(graph.vertices)
    rows = []
    cache: dict = {}
    for e in graph.edges:
        key = e.label.coeffs
        if key not in cache:
            cache[key] = [reduce_mod_linear(Poly(n, {m: 1}), e.label) for m in monos]
        reduced = cache[key]
        targets = sorted({t for r in reduced for t in r.terms}, reverse=True)
        for t in targets:
            row = [Fraction(0)] * ncols
            for j, r in enumerate(reduced):
                c = r.coefficient(t)
                if c:
                    row[e.upper * k + j] += c
                    row[e.lower * k + j] -= c
            if any(row):
                rows.append(row)
    return rows, ncols


def section_space_basis(graph: MomentGraph, degree: int) -> GradedBasis:
    """Degree-``degree`` homogeneous sections, as a reduced echelon basis."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    rows, ncols = constraint_matrix(graph, degree)
    ker = linalg.nullspace(rows, ncols)
    monos = monomials(graph.nvars, degree)
    nv = len(graph.vertices)
    basis = tuple(vector_to_section(v, nv, monos, graph.nvars) for v in ker)
    return GradedBasis(degree, basis, tuple(tuple(v) for v in ker))


def graded_ranks(graph: MomentGraph, max_degree: int, workers: int = 1) -> list[GradedBasis]:
    """Bases for degrees 0..max_degree; ``workers > 1`` solves degrees in parallel processes."""
    degrees = range(max_degree + 1)
    if workers <= 1:
        return [section_space_basis(graph, d) for d in degrees]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(section_space_basis, [graph] * len(degrees), degrees))


def span_rows(sections: Iterable[Section], graph: MomentGraph, degree: int) -> list[list[Fraction]]:
    monos = monomials(graph.nvars, degree)
    nv = len(graph.vertices)
    return linalg.rref([section_to_vector(s, nv, monos) for s in sections], nv * len(monos))[0]


def restriction_compatible(outer: MomentGraph, inner: MomentGraph, degree: int) -> bool:
    """Restricting outer-window sections to a nested window gives inner sections."""
    ids = [outer.index(w) for w in inner.vertices]
    for s in section_space_basis(outer, degree).basis:
        if not is_section(inner, s.restrict(ids)):
            return False
    return True


# subgeneric chains -------------------------------------------------------

def chain_order(graph: MomentGraph) -> list[int]:
    """Vertex ids bottom to top, insisting the graph is a path with one label up to scale."""
    nv = len(graph.vertices)
    if graph.point.kind != "subgeneric":
        raise ValueError("chain generators need a subgeneric deformation point")
    if graph.edges:
        first = graph.edges[0].label
        if not all(e.label.is_proportional(first) for e in graph.edges):
            raise ValueError("chain edges carry different coroot labels")
    if len(graph.edges) != nv - 1:
        raise ValueError("graph is not a chain (wrong number of edges)")
    up = {}
    has_down = set()
    for e in graph.edges:
        if e.lower in up or e.upper in has_down:
            raise ValueError("graph is not a chain (branching)")
        up[e.lower] = e.upper
        has_down.add(e.upper)
    bottoms = [v for v in range(nv) if v not in has_down]
    if len(bottoms) != 1:
        raise ValueError("graph is not a connected chain")
    order = [bottoms[0]]
    while order[-1] in up:
        order.append(up[order[-1]])
    if len(order) != nv:
        raise ValueError("graph is not a connected chain")
    return order


def subgeneric_generators(graph: MomentGraph) -> list[Section]:
    """The all-ones tuple and, per vertex with an up-neighbour, alpha^vee placed on that neighbour."""
    order = chain_order(graph)
    n = graph.nvars
    nv = len(graph.vertices)
    alpha = graph.point.root
    coroot = coroot_as_linear_form(graph.datum, alpha).to_poly()
    zero = Poly.zero(n)
    gens = [Section.constant(graph, 1)]
    for v in order:
        lam = graph.vertices[v]
        upper = arrow_up(graph.datum, alpha, lam)
        if upper != lam and upper in graph:
            u = graph.index(upper)
            gens.append(Section({i: coroot if i == u else zero for i in range(nv)}))
    return gens


@dataclass(frozen=True)
class GenerationReport:
    by_degree: dict[int, bool]
    ranks: dict[int, tuple[int, int]]  # degree -> (span of generators, full section rank)

    @property
    def ok(self) -> bool:
        return all(self.by_degree.values())


def generated_span(graph: MomentGraph, generators: Sequence[Section], degree: int) -> list[list[Fraction]]:
    """Row span of all monomial multiples of the generators landing in ``degree``."""
    n = graph.nvars
    products = []
    for g in generators:
        gdeg = max(p.degree() for p in g.values.values())
        if gdeg < 0 or gdeg > degree:
            continue
        for m in monomials(n, degree - gdeg):
            products.append(g * Poly(n, {m: 1}))
    return span_rows(products, graph, degree)


def verify_generation(graph: MomentGraph, max_degree: int) -> GenerationReport:
    gens = subgeneric_generators(graph)
    by_degree, ranks = {}, {}
    for d in range(max_degree + 1):
        full = section_space_basis(graph, d)
        spanned = generated_span(graph, gens, d)
        by_degree[d] = [list(r) for r in full.rows] == spanned
        ranks[d] = (len(spanned), full.rank)
    return GenerationReport(by_degree, ranks)


# localization intersection ----------------------------------------------

@dataclass(frozen=True)
class IntersectionReport:
    by_degree: dict[int, bool]
    ranks: dict[int, tuple[int, int]]  # degree -> (full graph, intersection)
    roots: tuple[Root, ...]

    @property
    def ok(self) -> bool:
        return all(self.by_degree.values())


def single_root_graphs(graph: MomentGraph) -> dict[Root, MomentGraph]:
    return {a: graph.restrict_edges(lambda e, a=a: e.root == a) for a in graph.edge_roots()}


def intersection_check(graph: MomentGraph, max_degree: int) -> IntersectionReport:
    """Compare the full section space with the intersection of the one-root section spaces."""
    nv = len(graph.vertices)
    pieces = single_root_graphs(graph)
    by_degree, ranks = {}, {}
    for d in range(max_degree + 1):
        ncols = nv * len(monomials(graph.nvars, d))
        full = [list(r) for r in section_space_basis(graph, d).rows]
        if pieces:
            inter = None
            for g in pieces.values():
                rows = [list(r) for r in section_space_basis(g, d).rows]
                inter = rows if inter is None else linalg.intersect(inter, rows, ncols)
        else:
            inter = linalg.rref([[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)], ncols)[0]
        by_degree[d] = full == inter
        ranks[d] = (len(full), len(inter))
    return IntersectionReport(by_degree, ranks, tuple(pieces))


# Casimir and Jantzen ------------------------------------------------------

def casimir_scalar(datum: RootDatum, lam: AffineWeight) -> Poly:
    """(lambda+tau+rho | lambda+tau+rho) - (rho|rho) at the critical level."""
    require_critical(datum, lam)
    shifted = tuple(a + 1 for a in lam.finite)
    rho = datum.rho_finite
    const = datum.form(shifted, shifted) - datum.form(rho, rho)
    return Poly.constant(datum.rank, const) + tau_pair(datum, shifted).to_poly() * 2 + tau_quad(datum)


def casimir_section(graph: MomentGraph) -> Section:
    return Section({i: casimir_scalar(graph.datum, w) for i, w in enumerate(graph.vertices)})


def jantzen_difference(datum: RootDatum, mu: AffineWeight, alpha: Sequence[int]) -> tuple[Fraction, LinearForm]:
    """k with (mu - alpha-down mu | tau) = k alpha^vee, plus the coroot form."""
    lower = arrow_down(datum, alpha, mu)
    if lower == mu:
        raise WallError(f"{tuple(alpha)} is a wall at this weight; the move is trivial")
    diff = tuple(a - b for a, b in zip(mu.finite, lower.finite))
    form = tau_pair(datum, diff)
    coroot = coroot_as_linear_form(datum, datum.positive_of(alpha))
    k = form.ratio_to(coroot)
    if k is None:
        raise AssertionError("(mu - alpha-down mu | tau) is not a multiple of the coroot")
    return k, coroot

