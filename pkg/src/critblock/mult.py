"""Multiplicity and Hom-rank tables for generic and subgeneric restricted blocks.

Only blocks whose projection to the finite Cartan has one or two elements
are covered.  Larger blocks raise :class:`UndeterminedMultiplicity`: their
multiplicities are conjectural (periodic Kazhdan-Lusztig polynomials) and
are not guessed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rootdata import Root, RootDatum
from .weights import (
    AffineWeight,
    DeformationPoint,
    Window,
    arrow_down,
    arrow_up,
    dot_reflect,
    finite_shifted_pairing,
    positive_integral_roots,
    require_critical,
)


class UndeterminedMultiplicity(ValueError):
    """The block is neither generic nor subgeneric."""


@dataclass(frozen=True)
class LocalBlock:
    kind: str  # "generic" or "subgeneric"
    root: Root | None = None


def local_block(datum: RootDatum, mu: AffineWeight, point: DeformationPoint) -> LocalBlock:
    """Generic/subgeneric type of the block through ``mu``.

    The finite parts reachable in one move already tell one, two or more
    elements apart, so no larger window is needed.
    """
    require_critical(datum, mu)
    movers = [a for a in positive_integral_roots(datum, mu, point) if finite_shifted_pairing(datum, mu, a) != 0]
    if not movers:
        return LocalBlock("generic")
    finite_parts = {mu.finite} | {dot_reflect(datum, mu, a, 0).finite for a in movers}
    if len(finite_parts) == 2 and len(movers) == 1:
        return LocalBlock("subgeneric", movers[0])
    raise UndeterminedMultiplicity(
        f"block through {mu} projects to more than two finite weights; "
        "its multiplicities are not determined (they are conjectured to be periodic KL values)"
    )


def verma_flag_multiplicity(datum: RootDatum, mu: AffineWeight, lam: AffineWeight, point: DeformationPoint) -> int:
    """(P(mu) : Delta(lambda)) for the restricted projective cover of L(mu)."""
    block = local_block(datum, mu, point)
    if block.kind == "generic":
        return int(lam == mu)
    return int(lam == mu or lam == arrow_up(datum, block.root, mu))


def simple_in_verma(datum: RootDatum, mu: AffineWeight, lam: AffineWeight, point: DeformationPoint) -> int:
    """[Delta(lambda) : L(mu)] for the restricted Verma module of highest weight lambda."""
    block = local_block(datum, lam, point)
    if block.kind == "generic":
        return int(mu == lam)
    return int(mu == lam or mu == arrow_down(datum, block.root, lam))


def hom_rank(datum: RootDatum, lam: AffineWeight, mu: AffineWeight, point: DeformationPoint) -> int:
    """Rank of Hom(P(mu), P(lambda)) over the local ring at the subgeneric prime."""
    block = local_block(datum, lam, point)
    if block.kind != "subgeneric":
        raise ValueError("Hom ranks are tabulated for subgeneric blocks only")
    if mu == lam:
        return 2
    if mu == arrow_down(datum, block.root, lam) or mu == arrow_up(datum, block.root, lam):
        return 1
    return 0


def jantzen_layers(datum: RootDatum, mu: AffineWeight, point: DeformationPoint) -> list[AffineWeight]:
    """Highest weights of the nonzero lower Jantzen layers of Delta(mu)."""
    block = local_block(datum, mu, point)
    if block.kind == "generic":
        return []
    lower = arrow_down(datum, block.root, mu)
    return [] if lower == mu else [lower]


@dataclass(frozen=True)
class MultiplicityRow:
    mu: AffineWeight
    lam: AffineWeight
    verma_flag: int
    simple: int
    hom: int | None


@dataclass(frozen=True)
class MultiplicityTable:
    block: str
    rows: tuple[MultiplicityRow, ...]


def multiplicity_table(datum: RootDatum, window: Window, point: DeformationPoint) -> MultiplicityTable:
    kinds = {local_block(datum, w, point).kind for w in window}
    rows = []
    for mu in window:
        for lam in window:
            hom = None
            if local_block(datum, lam, point).kind == "subgeneric":
                hom = hom_rank(datum, lam, mu, point)
            rows.append(
                MultiplicityRow(
                    mu, lam, verma_flag_multiplicity(datum, mu, lam, point), simple_in_verma(datum, mu, lam, point), hom
                )
            )
    block = kinds.pop() if len(kinds) == 1 else "mixed"
    return MultiplicityTable(block, tuple(rows))


@dataclass(frozen=True)
class BGGHReport:
    pairs: int
    mismatches: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def bggh_consistency(datum: RootDatum, window: Window | Sequence[AffineWeight], point: DeformationPoint) -> BGGHReport:
    """(P(mu) : Delta(lambda)) == [Delta(lambda) : L(mu)] on every pair of the window."""
    weights = list(window)
    bad = []
    for i, mu in enumerate(weights):
        for j, lam in enumerate(weights):
            if verma_flag_multiplicity(datum, mu, lam, point) != simple_in_verma(datum, mu, lam, point):
                bad.append((i, j))
    return BGGHReport(len(weights) ** 2, tuple(bad))
