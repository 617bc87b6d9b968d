"""Exit criteria, runnable from pytest or ``critblock acceptance``.

Each criterion returns a :class:`CriterionResult`; random inputs come from
fixed seeds so every run checks the same cases.
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Callable

from .mult import (
    UndeterminedMultiplicity,
    bggh_consistency,
    hom_rank,
    simple_in_verma,
    verma_flag_multiplicity,
)
from .polyring import LinearForm
from .rootdata import RootDatum, build_root_datum, coroot_as_linear_form
from .structalg import (
    MomentGraph,
    build_moment_graph,
    casimir_section,
    intersection_check,
    is_section,
    jantzen_difference,
    section_space_basis,
    verify_generation,
)
from .weights import (
    AffineWeight,
    DeformationPoint,
    Window,
    arrow_down,
    arrow_up,
    block_window,
    chain,
    finite_shifted_pairing,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g} s)" if self.limit is not None else ""
        return f"[{status}] criterion {self.number}: {self.title} -- {self.detail} [{self.seconds:.2f} s{budget}]"


def _timed(number: int, title: str, limit: float | None, body: Callable[[], tuple[bool, str]]) -> CriterionResult:
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; runtime {elapsed:.2f} s over budget"
    return CriterionResult(number, title, ok, detail, elapsed, limit)


def random_integral_weight(rng: random.Random, datum: RootDatum, span: int = 6) -> AffineWeight:
    return AffineWeight.critical(
        datum, [rng.randint(-span, span) for _ in range(datum.rank)], rng.randint(-3, 3)
    )


def random_nonwall(rng: random.Random, datum: RootDatum, alpha, span: int = 6) -> AffineWeight:
    while True:
        lam = random_integral_weight(rng, datum, span)
        if finite_shifted_pairing(datum, lam, alpha) != 0:
            return lam


# independent oracle: divisibility by a linear form == vanishing on its hyperplane

def _hyperplane_basis(form: LinearForm) -> list[list[Fraction]]:
    j = form.pivot()
    out = []
    for i in range(form.nvars):
        if i == j:
            continue
        v = [Fraction(0)] * form.nvars
        v[i] = Fraction(1)
        v[j] = -form.coeffs[i] / form.coeffs[j]
        out.append(v)
    return out


def oracle_section_rank(graph: MomentGraph, degree: int) -> int:
    """Kernel dimension of an evaluation-based constraint matrix, ranked by sympy.

    A homogeneous degree-d polynomial vanishes on a hyperplane iff it
    vanishes on a (d+1)-grid of points in it.
    """
    import sympy

    n = graph.nvars
    monos = [m for m in product(range(degree + 1), repeat=n) if sum(m) == degree]
    nv = len(graph.vertices)
    ncols = nv * len(monos)
    rows = []
    for e in graph.edges:
        basis = _hyperplane_basis(e.label)
        for t in product(range(degree + 1), repeat=len(basis)):
            pt = [sum((t[k] * basis[k][i] for k in range(len(basis))), Fraction(0)) for i in range(n)]
            row = [0] * ncols
            for j, m in enumerate(monos):
                val = Fraction(1)
                for x, ex in zip(pt, m):
                    val *= x**ex
                row[e.upper * len(monos) + j] += val
                row[e.lower * len(monos) + j] -= val
            rows.append([sympy.Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else v for v in row])
    if not rows:
        return ncols
    return ncols - sympy.Matrix(rows).rank()


# criteria ---------------------------------------------------------------------

def _criterion1_windows() -> list[tuple[RootDatum, DeformationPoint, AffineWeight, Window]]:
    rng = random.Random(20261)
    out = []
    for family, rank in (("A", 1), ("A", 2), ("B", 2)):
        datum = build_root_datum(family, rank)
        for k in range(100):
            alpha = datum.positive_roots[k % len(datum.positive_roots)]
            lam = random_nonwall(rng, datum, alpha)
            point = DeformationPoint.subgeneric(datum, alpha)
            out.append((datum, point, lam, block_window(datum, lam, point, 4)))
    return out


def criterion_1() -> CriterionResult:
    def body():
        failures = []
        windows = _criterion1_windows()
        for datum, point, lam, window in windows:
            alpha = point.root
            ws = window.weights
            line = chain(datum, lam, alpha, 4, 4)
            fins = [w.finite for w in line]
            alternates = all(fins[i] == fins[i % 2] for i in range(len(fins))) and fins[0] != fins[1]
            inverse = all(arrow_up(datum, alpha, arrow_down(datum, alpha, w)) == w for w in ws)
            if not (len(ws) == 9 and len(set(ws)) == 9 and set(ws) == set(line)
                    and len({w.finite for w in ws}) == 2 and alternates and inverse):
                failures.append((datum.name, lam))
        return not failures, f"{len(windows)} windows, {len(failures)} failures"

    return _timed(1, "subgeneric chains of 9 alternating weights", 5.0, body)


def criterion2_graph() -> MomentGraph:
    datum = build_root_datum("A", 2)
    point = DeformationPoint.central()
    window = block_window(datum, AffineWeight.critical(datum, [0, 0]), point, 2)
    return build_moment_graph(datum, window, point)


def criterion_2() -> CriterionResult:
    def body():
        graph = criterion2_graph()
        report = intersection_check(graph, 3)
        oracle_ok = all(oracle_section_rank(graph, d) == report.ranks[d][0] for d in range(4))
        ranks = ", ".join(f"d{d}:{r[0]}={r[1]}" for d, r in report.ranks.items())
        return report.ok and oracle_ok, f"{len(graph.vertices)} vertices, ranks {ranks}, oracle agrees: {oracle_ok}"

    return _timed(2, "full section space equals the intersection over single roots", 30.0, body)


def _chain_graph(datum: RootDatum, lam: AffineWeight, alpha, length: int) -> MomentGraph:
    point = DeformationPoint.subgeneric(datum, alpha)
    below = (length - 1) // 2
    weights = chain(datum, lam, alpha, below, length - 1 - below)
    return build_moment_graph(datum, Window.from_weights(datum, weights), point)


def criterion_3() -> CriterionResult:
    def body():
        cases = [
            (build_root_datum("A", 1), [0], (1,)),
            (build_root_datum("A", 2), [0, 0], (1, 0)),
            (build_root_datum("A", 2), [1, -2], (1, 1)),
            (build_root_datum("B", 2), [2, 1], (0, 1)),
        ]
        checked, bad = 0, []
        for datum, fin, alpha in cases:
            lam = AffineWeight.critical(datum, fin)
            for length in range(2, 7):
                graph = _chain_graph(datum, lam, alpha, length)
                report = verify_generation(graph, 3)
                for d in range(4):
                    checked += 1
                    spanned, full = report.ranks[d]
                    if not report.by_degree[d] or spanned != oracle_section_rank(graph, d) or full != spanned:
                        bad.append((datum.name, length, d))
        return not bad, f"{checked} (chain, degree) cases, {len(bad)} failures"

    return _timed(3, "ones and kappa tuples generate the subgeneric center", 30.0, body)


def criterion_4() -> CriterionResult:
    def body():
        graphs = [build_moment_graph(d, w, p) for d, p, _, w in _criterion1_windows()]
        graphs.append(criterion2_graph())
        g2 = build_root_datum("G", 2)
        rng = random.Random(4242)
        for k in range(6):
            lam = random_integral_weight(rng, g2)
            point = DeformationPoint.central() if k % 2 else DeformationPoint.subgeneric(g2, g2.positive_roots[k])
            graphs.append(build_moment_graph(g2, block_window(g2, lam, point, 2), point))
        failures = sum(1 for g in graphs if not is_section(g, casimir_section(g)))
        edges = sum(len(g.edges) for g in graphs)
        return failures == 0, f"{len(graphs)} graphs, {edges} edges, {failures} failures"

    return _timed(4, "the Casimir tuple is a section", None, body)


def criterion_5() -> CriterionResult:
    def body():
        rng = random.Random(55)
        types = [build_root_datum(f, r) for f, r in (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("F", 4), ("G", 2))]
        bad = 0
        for k in range(200):
            datum = types[k % len(types)]
            alpha = rng.choice(datum.positive_roots)
            mu = random_nonwall(rng, datum, alpha)
            scalar, modulus = jantzen_difference(datum, mu, alpha)
            if scalar == 0 or modulus != coroot_as_linear_form(datum, alpha):
                bad += 1
        a1 = build_root_datum("A", 1)
        lam = AffineWeight.critical(a1, [0])
        k_plus = jantzen_difference(a1, lam, (1,))[0]
        k_minus = jantzen_difference(a1, arrow_down(a1, (1,), lam), (1,))[0]
        ok = bad == 0 and k_plus == 1 and k_minus == -1
        return ok, f"200 random moves, {bad} zero/non-proportional; A1 k = {k_plus}, {k_minus}"

    return _timed(5, "Jantzen discriminant is a nonzero multiple of the coroot", None, body)


def criterion_6() -> CriterionResult:
    def body():
        rng = random.Random(66)
        generic = DeformationPoint.generic()
        bad, cases = 0, 0
        for family, rank in (("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3)):
            datum = build_root_datum(family, rank)
            for _ in range(4):
                lam = random_integral_weight(rng, datum)
                windows = [block_window(datum, lam, generic, 3)]
                others = {random_integral_weight(rng, datum) for _ in range(3)} | {lam}
                windows.append(Window.from_weights(datum, sorted(others, key=lambda w: (w.finite, w.dcoef))))
                for window in windows:
                    graph = build_moment_graph(datum, window, generic)
                    for d in range(4):
                        cases += 1
                        expected = len(window) * comb(d + rank - 1, rank - 1)
                        if graph.edges or section_space_basis(graph, d).rank != expected:
                            bad += 1
        return bad == 0, f"{cases} (window, degree) cases, {bad} failures"

    return _timed(6, "generic points give the full product", None, body)


def criterion_7() -> CriterionResult:
    def body():
        datum = build_root_datum("A", 1)
        lam = AffineWeight.critical(datum, [0])
        point = DeformationPoint.subgeneric(datum, (1,))
        window = block_window(datum, lam, point, 3)
        line = chain(datum, lam, (1,), 3, 3)
        pos = {w: i for i, w in enumerate(line)}
        bad = 0
        if set(window.weights) != set(line):
            bad += 1
        for mu in window:
            for lam_ in window:
                i, j = pos[mu], pos[lam_]
                hom_expect = 2 if i == j else (1 if abs(i - j) == 1 else 0)
                flag_expect = int(j in (i, i + 1))
                simple_expect = int(i in (j, j - 1))
                got = (
                    hom_rank(datum, lam_, mu, point),
                    verma_flag_multiplicity(datum, mu, lam_, point),
                    simple_in_verma(datum, mu, lam_, point),
                )
                if got != (hom_expect, flag_expect, simple_expect):
                    bad += 1
        bggh = bggh_consistency(datum, window, point)
        a2 = build_root_datum("A", 2)
        refused = False
        try:
            verma_flag_multiplicity(a2, AffineWeight.critical(a2, [0, 0]), AffineWeight.critical(a2, [0, 0]), DeformationPoint.central())
        except UndeterminedMultiplicity:
            refused = True
        ok = bad == 0 and bggh.ok and refused
        return ok, f"{len(window)}-vertex window, {bad} table mismatches, BGGH ok: {bggh.ok}, other block refused: {refused}"

    return _timed(7, "multiplicity tables and BGGH reciprocity", None, body)


CRITERION8_ARGV = [
    "center", "--type", "A2", "--weight", "{finite:[0,0],level:crit,d:0}", "--point", "central",
    "--radius", "2", "--max-degree", "3", "--format", "json", "--basis",
]


def criterion_8() -> CriterionResult:
    def body():
        outputs = []
        for seed in ("1", "2"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            proc = subprocess.run(
                [sys.executable, "-m", "critblock", *CRITERION8_ARGV], capture_output=True, env=env, check=False
            )
            if proc.returncode != 0:
                return False, f"exit code {proc.returncode}: {proc.stderr.decode()[:200]}"
            outputs.append(proc.stdout)
        same = outputs[0] == outputs[1]
        return same, f"two runs, {len(outputs[0])} bytes each, identical: {same}"

    return _timed(8, "cmd_center output is byte-identical across runs", None, body)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def run_all() -> list[CriterionResult]:
    return [c() for c in CRITERIA]
