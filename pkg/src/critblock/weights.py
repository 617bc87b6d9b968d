"""Affine weights on the critical hyperplane and the moves that generate blocks.

An affine weight is stored as (finite part in fundamental-weight
coordinates, level, delta-coefficient).  The affine rho has finite part
rho-bar, level h^vee and a D-component that defaults to 0; nothing computed
here depends on that last choice.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import as_fraction
from .rootdata import Root, RootDatum, negate, pairing


class NotCriticalError(ValueError):
    pass


@dataclass(frozen=True)
class AffineWeight:
    finite: tuple[Fraction, ...]
    level: Fraction
    dcoef: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(as_fraction(v) for v in self.finite))
        object.__setattr__(self, "level", as_fraction(self.level))
        object.__setattr__(self, "dcoef", as_fraction(self.dcoef))

    @classmethod
    def critical(cls, datum: RootDatum, finite: Sequence, dcoef=0) -> "AffineWeight":
        if len(finite) != datum.rank:
            raise ValueError(f"finite part needs {datum.rank} coordinates")
        return cls(tuple(finite), Fraction(-datum.dual_coxeter), dcoef)

    def is_critical(self, datum: RootDatum) -> bool:
        return self.level == -datum.dual_coxeter

    def shift(self, finite: Sequence = None, dcoef=0) -> "AffineWeight":
        """Add a level-zero vector (finite part plus a multiple of delta)."""
        fin = self.finite if finite is None else tuple(a + as_fraction(b) for a, b in zip(self.finite, finite))
        return AffineWeight(fin, self.level, self.dcoef + as_fraction(dcoef))

    def __sub__(self, other: "AffineWeight") -> tuple[tuple[Fraction, ...], Fraction, Fraction]:
        return (
            tuple(a - b for a, b in zip(self.finite, other.finite)),
            self.level - other.level,
            self.dcoef - other.dcoef,
        )


def delta(rank: int) -> AffineWeight:
    return AffineWeight((Fraction(0),) * rank, Fraction(0), Fraction(1))


def require_critical(datum: RootDatum, lam: AffineWeight) -> None:
    if not lam.is_critical(datum):
        raise NotCriticalError(f"weight of level {lam.level} is not at the critical level {-datum.dual_coxeter}")


# deformation points ---------------------------------------------------

@dataclass(frozen=True)
class DeformationPoint:
    """Where the canonical weight is specialized.

    ``generic`` kills no coroot, ``central`` kills all of them and
    ``subgeneric`` kills exactly the coroots of +-root.
    """

    kind: str
    root: Root | None = None

    def __post_init__(self):
        if self.kind not in ("generic", "central", "subgeneric"):
            raise ValueError(f"unknown deformation point {self.kind!r}")
        if (self.kind == "subgeneric") != (self.root is not None):
            raise ValueError("a root is required exactly for subgeneric points")

    @classmethod
    def generic(cls) -> "DeformationPoint":
        return cls("generic")

    @classmethod
    def central(cls) -> "DeformationPoint":
        return cls("central")

    @classmethod
    def subgeneric(cls, datum: RootDatum, root: Sequence[int]) -> "DeformationPoint":
        return cls("subgeneric", datum.positive_of(root))

    def kills(self, alpha: Sequence[int]) -> bool:
        if self.kind == "generic":
            return False
        if self.kind == "central":
            return True
        alpha = tuple(alpha)
        return alpha == self.root or alpha == negate(self.root)


# pairings and reflections --------------------------------------------

def finite_shifted_pairing(datum: RootDatum, lam: AffineWeight, alpha: Sequence[int]) -> Fraction:
    """<lambda-bar + rho-bar, alpha^vee>."""
    return pairing(datum, tuple(a + 1 for a in lam.finite), alpha)


def affine_pairing(datum: RootDatum, lam: AffineWeight, alpha: Sequence[int], n: int) -> Fraction:
    """<lambda + rho, (alpha + n delta)^vee>."""
    alpha = datum.check_root(alpha)
    m = finite_shifted_pairing(datum, lam, alpha)
    return m + n * 2 / datum.root_norm(alpha) * (lam.level + datum.dual_coxeter)


def dot_reflect(datum: RootDatum, lam: AffineWeight, alpha: Sequence[int], n: int, *, rho_d=0) -> AffineWeight:
    """s_{alpha + n delta} . lambda, computed as s(lambda + rho) - rho.

    ``rho_d`` is the D-component of rho; the result does not depend on it.
    """
    alpha = datum.check_root(alpha)
    rho_d = as_fraction(rho_d)
    shifted = AffineWeight(
        tuple(a + 1 for a in lam.finite), lam.level + datum.dual_coxeter, lam.dcoef + rho_d
    )
    # <x, (alpha + n delta)^vee> only sees the finite part and the level
    m = pairing(datum, shifted.finite, alpha) + n * 2 / datum.root_norm(alpha) * shifted.level
    alpha_w = datum.to_weight(alpha)
    reflected = AffineWeight(
        tuple(x - m * a for x, a in zip(shifted.finite, alpha_w)), shifted.level, shifted.dcoef - m * n
    )
    return AffineWeight(
        tuple(x - 1 for x in reflected.finite), reflected.level - datum.dual_coxeter, reflected.dcoef - rho_d
    )


# partial order ---------------------------------------------------------

class Order(Enum):
    EQUAL = "equal"
    LESS = "less"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def affine_simple_decomposition(datum: RootDatum, diff_finite: Sequence, diff_d) -> tuple[Fraction, ...]:
    """Coefficients (c_0, c_1, ..., c_n) with diff = sum c_i alpha_i + c_0 (delta - theta)."""
    c0 = as_fraction(diff_d)
    r = datum.to_root_coords(diff_finite)
    theta = datum.theta
    return (c0,) + tuple(r[i] + c0 * theta[i] for i in range(datum.rank))


def compare(datum: RootDatum, lam: AffineWeight, mu: AffineWeight) -> Order:
    """Position of lambda relative to mu in the affine dominance order."""
    if lam.level != mu.level:
        raise ValueError("weights of different levels are not compared")
    fin, _, d = mu - lam
    coeffs = affine_simple_decomposition(datum, fin, d)
    if not any(coeffs):
        return Order.EQUAL
    if any(c.denominator != 1 for c in coeffs):
        return Order.INCOMPARABLE
    if all(c >= 0 for c in coeffs):
        return Order.LESS
    if all(c <= 0 for c in coeffs):
        return Order.GREATER
    return Order.INCOMPARABLE


def leq(datum: RootDatum, lam: AffineWeight, mu: AffineWeight) -> bool:
    return compare(datum, lam, mu) in (Order.LESS, Order.EQUAL)


# arrow moves -----------------------------------------------------------

def _move_data(datum: RootDatum, alpha: Sequence[int], lam: AffineWeight) -> tuple[Root, Fraction]:
    require_critical(datum, lam)
    alpha = datum.positive_of(alpha)
    m = finite_shifted_pairing(datum, lam, alpha)
    if m.denominator != 1:
        raise ValueError(
            f"{alpha} is not integral at this weight (<lambda+rho, alpha^vee> = {m}); "
            "neither reflection is comparable with lambda"
        )
    return alpha, m


def arrow_down(datum: RootDatum, alpha: Sequence[int], lam: AffineWeight) -> AffineWeight:
    """The smaller-or-equal element of {s_alpha . lambda, s_{-alpha+delta} . lambda}.

    Negative roots are replaced by their positive counterpart.
    """
    alpha, m = _move_data(datum, alpha, lam)
    if m > 0:
        return dot_reflect(datum, lam, alpha, 0)
    if m < 0:
        return dot_reflect(datum, lam, negate(alpha), 1)
    return lam


def arrow_up(datum: RootDatum, alpha: Sequence[int], lam: AffineWeight) -> AffineWeight:
    """The larger-or-equal element of {s_alpha . lambda, s_{-alpha+delta} . lambda}."""
    alpha, m = _move_data(datum, alpha, lam)
    if m > 0:
        return dot_reflect(datum, lam, negate(alpha), 1)
    if m < 0:
        return dot_reflect(datum, lam, alpha, 0)
    return lam


def is_wall(datum: RootDatum, alpha: Sequence[int], lam: AffineWeight) -> bool:
    return finite_shifted_pairing(datum, lam, alpha) == 0


# integral roots and blocks --------------------------------------------

def integral_roots(datum: RootDatum, lam: AffineWeight, point: DeformationPoint) -> tuple[Root, ...]:
    """Finite roots integral at lambda whose coroot the point's canonical weight kills.

    Returned in datum order (positive roots, then negatives).
    """
    require_critical(datum, lam)
    out = []
    for alpha in datum.roots:
        if point.kills(alpha) and finite_shifted_pairing(datum, lam, alpha).denominator == 1:
            out.append(alpha)
    return tuple(out)


def positive_integral_roots(datum: RootDatum, lam: AffineWeight, point: DeformationPoint) -> tuple[Root, ...]:
    pos = set(datum.positive_roots)
    return tuple(a for a in integral_roots(datum, lam, point) if a in pos)


@dataclass(frozen=True)
class Window:
    """Finite piece of a block: the weights within ``radius`` moves of ``base``.

    ``explicit`` windows carry a caller-supplied weight list instead.
    """

    base: AffineWeight
    radius: int
    weights: tuple[AffineWeight, ...]
    explicit: bool = False

    def __post_init__(self):
        if len(set(self.weights)) != len(self.weights):
            raise ValueError("window weights must be pairwise distinct")

    @classmethod
    def from_weights(cls, datum: RootDatum, weights: Iterable[AffineWeight]) -> "Window":
        weights = tuple(weights)
        if not weights:
            raise ValueError("an explicit window needs at least one weight")
        for w in weights:
            require_critical(datum, w)
        return cls(weights[0], 0, weights, explicit=True)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __contains__(self, w) -> bool:
        return w in self.weights


def neighbours(datum: RootDatum, lam: AffineWeight, point: DeformationPoint) -> list[AffineWeight]:
    """Down and up moves for every positive integral root, roots in datum order."""
    out = []
    for alpha in positive_integral_roots(datum, lam, point):
        out.append(arrow_down(datum, alpha, lam))
        out.append(arrow_up(datum, alpha, lam))
    return out


def block_window(datum: RootDatum, lam: AffineWeight, point: DeformationPoint, radius: int) -> Window:
    """Breadth-first move closure of {lambda}, truncated at move distance ``radius``."""
    require_critical(datum, lam)
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    seen = {lam}
    order = [lam]
    frontier = deque([(lam, 0)])
    while frontier:
        w, dist = frontier.popleft()
        if dist == radius:
            continue
        for nb in neighbours(datum, w, point):
            if nb not in seen:
                seen.add(nb)
                order.append(nb)
                frontier.append((nb, dist + 1))
    return Window(lam, radius, tuple(order))


def chain(datum: RootDatum, lam: AffineWeight, alpha: Sequence[int], below: int, above: int) -> list[AffineWeight]:
    """[alpha-down^below lambda, ..., lambda, ..., alpha-up^above lambda] in increasing order."""
    down = [lam]
    for _ in range(below):
        down.append(arrow_down(datum, alpha, down[-1]))
    up = [lam]
    for _ in range(above):
        up.append(arrow_up(datum, alpha, up[-1]))
    return list(reversed(down)) + up[1:]


@dataclass(frozen=True)
class BlockClass:
    kind: str  # "generic", "subgeneric" or "other"
    count: int

    def __str__(self) -> str:
        return self.kind if self.kind != "other" else f"other({self.count})"


def classify_block(window: Window) -> BlockClass:
    """Classify by the number of distinct finite parts in the window."""
    k = len({w.finite for w in window.weights})
    if k == 1:
        return BlockClass("generic", 1)
    if k == 2:
        return BlockClass("subgeneric", 2)
    return BlockClass("other", k)
