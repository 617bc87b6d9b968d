"""Finite simple root systems with the invariant form normalized by (theta|theta) = 2.

Root vectors are integer tuples in simple-root coordinates; weight vectors
are Fraction tuples in fundamental-weight coordinates.  The Cartan matrix
follows ``A[i][j] = <alpha_j, alpha_i^vee>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import inverse
from .polyring import LinearForm, as_fraction

Root = tuple[int, ...]
Weight = tuple[Fraction, ...]

FAMILIES = "ABCDEFG"

_CLASSICAL_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class InvalidCartanType(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]

    def __post_init__(self):
        a = self.cartan_matrix
        n = self.rank
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError("Cartan matrix diagonal must be 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if self.symmetrizer[i] * a[i][j] != self.symmetrizer[j] * a[j][i]:
                    raise ValueError("symmetrizer does not symmetrize the Cartan matrix")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def validate_type(family: str, rank: int) -> None:
    family = family.upper()
    ok = (
        (family == "A" and rank >= 1)
        or (family in "BC" and rank >= 2)
        or (family == "D" and rank >= 4)
        or (family == "E" and rank in (6, 7, 8))
        or (family == "F" and rank == 4)
        or (family == "G" and rank == 2)
    )
    if len(family) != 1 or family not in FAMILIES or not ok:
        raise InvalidCartanType(
            f"{family}{rank} is not a finite simple type "
            "(valid: A_n n>=1, B_n/C_n n>=2, D_n n>=4, E6, E7, E8, F4, G2)"
        )


def _simple_gram(family: str, n: int) -> list[list[Fraction]]:
    """Gram matrix of simple roots, Bourbaki numbering, long roots of length^2 = 2."""
    g = [[Fraction(0)] * n for _ in range(n)]

    def bond(i, j, value):
        g[i][j] = g[j][i] = Fraction(value)

    if family == "A":
        lengths = [2] * n
        for i in range(n - 1):
            bond(i, i + 1, -1)
    elif family == "B":
        lengths = [2] * (n - 1) + [1]
        for i in range(n - 1):
            bond(i, i + 1, -1)
    elif family == "C":
        lengths = [1] * (n - 1) + [2]
        for i in range(n - 2):
            bond(i, i + 1, Fraction(-1, 2))
        bond(n - 2, n - 1, -1)
    elif family == "D":
        lengths = [2] * n
        for i in range(n - 2):
            bond(i, i + 1, -1)
        bond(n - 3, n - 1, -1)
    elif family == "E":
        lengths = [2] * n
        bond(0, 2, -1)
        bond(1, 3, -1)
        for i in range(2, n - 1):
            bond(i, i + 1, -1)
    elif family == "F":
        lengths = [2, 2, 1, 1]
        bond(0, 1, -1)
        bond(1, 2, -1)
        bond(2, 3, Fraction(-1, 2))
    else:  # G
        lengths = [Fraction(2, 3), 2]
        bond(0, 1, -1)
    for i, length in enumerate(lengths):
        g[i][i] = Fraction(length)
    return g


def _positive_roots(cartan: Sequence[Sequence[int]]) -> list[Root]:
    """Positive roots by raising through alpha_i-strings, height by height."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(n):
                # p = how far the alpha_i-string extends below beta
                p = 0
                lower = list(beta)
                while True:
                    lower[i] -= 1
                    if tuple(lower) in found:
                        p += 1
                    else:
                        break
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        nxt.add(up)
        found |= nxt
        layer = sorted(nxt)
    return sorted(found, key=_root_order)


def _root_order(root: Root):
    # height first, then alpha_1 before alpha_2 before ...
    return (sum(root), tuple(-c for c in root))


@dataclass(frozen=True)
class RootDatum:
    datum: CartanDatum
    positive_roots: tuple[Root, ...]
    highest_root: int
    rho_finite: Weight
    dual_coxeter: int
    form_gram: tuple[tuple[Fraction, ...], ...]
    fundamental_gram: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    weight_to_root_matrix: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    _root_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_root_set", frozenset(self.roots))

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def name(self) -> str:
        return self.datum.name

    @property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        return self.datum.cartan_matrix

    @property
    def theta(self) -> Root:
        return self.positive_roots[self.highest_root]

    @property
    def roots(self) -> tuple[Root, ...]:
        """Positive roots in datum order followed by their negatives."""
        return self.positive_roots + tuple(negate(r) for r in self.positive_roots)

    def simple_root(self, i: int) -> Root:
        return tuple(int(i == j) for j in range(self.rank))

    def is_root(self, alpha: Sequence[int]) -> bool:
        alpha = tuple(alpha)
        return alpha in self._root_set

    def check_root(self, alpha: Sequence[int]) -> Root:
        alpha = tuple(int(c) for c in alpha)
        if not self.is_root(alpha):
            raise ValueError(f"{alpha} is not a root of {self.name}")
        return alpha

    def to_weight(self, root_coords: Sequence) -> Weight:
        """Simple-root coordinates to fundamental-weight coordinates."""
        a = self.cartan
        n = self.rank
        return tuple(sum((a[i][j] * as_fraction(root_coords[j]) for j in range(n)), Fraction(0)) for i in range(n))

    def to_root_coords(self, weight: Sequence) -> Weight:
        m = self.weight_to_root_matrix
        n = self.rank
        return tuple(sum((m[i][j] * as_fraction(weight[j]) for j in range(n)), Fraction(0)) for i in range(n))

    def form(self, xi: Sequence, eta: Sequence) -> Fraction:
        """(xi|eta) for weights in fundamental-weight coordinates."""
        fg = self.fundamental_gram
        n = self.rank
        return sum(
            (as_fraction(xi[i]) * fg[i][j] * as_fraction(eta[j]) for i in range(n) for j in range(n) if xi[i] and eta[j]),
            Fraction(0),
        )

    def root_norm(self, alpha: Sequence[int]) -> Fraction:
        """(alpha|alpha) for a vector in simple-root coordinates."""
        g = self.form_gram
        n = self.rank
        return sum((alpha[i] * g[i][j] * alpha[j] for i in range(n) for j in range(n)), Fraction(0))

    def positive_of(self, alpha: Sequence[int]) -> Root:
        """The positive root among {alpha, -alpha}."""
        alpha = self.check_root(alpha)
        return alpha if any(c > 0 for c in alpha) else negate(alpha)

    def root_index(self, alpha: Sequence[int]) -> int:
        return self.positive_roots.index(self.positive_of(alpha))


def negate(v: Sequence[int]) -> tuple:
    return tuple(-c for c in v)


@lru_cache(maxsize=None)
def build_root_datum(family: str, rank: int) -> RootDatum:
    """Cartan data, positive roots, theta, rho and h^vee for a simple type."""
    family = family.upper()
    validate_type(family, rank)
    gram = _simple_gram(family, rank)
    n = rank
    cartan = tuple(tuple(int(2 * gram[i][j] / gram[i][i]) for j in range(n)) for i in range(n))
    symmetrizer = tuple(gram[i][i] / 2 for i in range(n))
    cd = CartanDatum(family, rank, cartan, symmetrizer)
    pos = tuple(_positive_roots(cartan))
    if len(pos) != _CLASSICAL_COUNTS[family](rank):
        raise AssertionError(f"root enumeration for {cd.name} produced {len(pos)} roots")
    highest = max(range(len(pos)), key=lambda k: sum(pos[k]))
    theta = pos[highest]
    theta_norm = sum((theta[i] * gram[i][j] * theta[j] for i in range(n) for j in range(n)), Fraction(0))
    if theta_norm != 2:
        raise AssertionError("normalization (theta|theta) = 2 failed")
    comarks = [theta[i] * gram[i][i] / theta_norm for i in range(n)]
    hvee = 1 + sum(comarks)
    if hvee.denominator != 1:
        raise AssertionError("non-integral dual Coxeter number")
    a_inv = inverse([[Fraction(c) for c in row] for row in cartan])
    # (omega_i|omega_j) = (A^-1 e_i)^T G (A^-1 e_j)
    fund = tuple(
        tuple(
            sum((a_inv[k][i] * gram[k][l] * a_inv[l][j] for k in range(n) for l in range(n)), Fraction(0))
            for j in range(n)
        )
        for i in range(n)
    )
    return RootDatum(
        datum=cd,
        positive_roots=pos,
        highest_root=highest,
        rho_finite=tuple(Fraction(1) for _ in range(n)),
        dual_coxeter=int(hvee),
        form_gram=tuple(tuple(row) for row in gram),
        fundamental_gram=fund,
        weight_to_root_matrix=tuple(tuple(row) for row in a_inv),
    )


def parse_type(text: str, rank: int | None = None) -> RootDatum:
    """Accept ``"A2"`` or ``("A", 2)``."""
    text = text.strip()
    if rank is None:
        if len(text) < 2 or not text[1:].isdigit():
            raise InvalidCartanType(f"cannot read root type {text!r}")
        family, rank = text[0], int(text[1:])
    else:
        family = text
    return build_root_datum(family.upper(), rank)


def pairing(datum: RootDatum, xi: Sequence, alpha: Sequence[int]) -> Fraction:
    """<xi, alpha^vee> = 2 (xi|alpha) / (alpha|alpha), xi in fundamental-weight coordinates."""
    alpha = datum.check_root(alpha)
    sym = datum.datum.symmetrizer
    # (xi|alpha_i) = xi_i (alpha_i|alpha_i)/2
    num = sum((as_fraction(xi[i]) * sym[i] * alpha[i] for i in range(datum.rank)), Fraction(0))
    return 2 * num / datum.root_norm(alpha)


def coroot_coefficients(datum: RootDatum, alpha: Sequence[int]) -> tuple[int, ...]:
    """Integers c_i with alpha^vee = sum c_i alpha_i^vee."""
    alpha = datum.check_root(alpha)
    norm = datum.root_norm(alpha)
    out = []
    for i in range(datum.rank):
        c = alpha[i] * datum.form_gram[i][i] / norm
        if c.denominator != 1:
            raise AssertionError("coroot coefficient is not integral")
        out.append(int(c))
    return tuple(out)


def coroot_as_linear_form(datum: RootDatum, alpha: Sequence[int]) -> LinearForm:
    return LinearForm(tuple(Fraction(c) for c in coroot_coefficients(datum, alpha)))


def root_name(datum: RootDatum, alpha: Sequence[int]) -> str:
    """``alpha3``, ``-theta`` or a coordinate literal like ``[1,1,0]``."""
    alpha = tuple(alpha)
    sign = ""
    if all(c <= 0 for c in alpha):
        sign, alpha = "-", negate(alpha)
    if sum(alpha) == 1:
        return f"{sign}alpha{alpha.index(1) + 1}"
    if alpha == datum.theta:
        return f"{sign}theta"
    return sign + "[" + ",".join(str(c) for c in alpha) + "]"


def parse_root(datum: RootDatum, text: str) -> Root:
    """Inverse of :func:`root_name`; also accepts bare ``1,1``."""
    text = text.strip()
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:].strip()
    if text.startswith("alpha"):
        i = int(text[5:]) - 1
        if not 0 <= i < datum.rank:
            raise ValueError(f"no simple root alpha{i + 1} in {datum.name}")
        root = datum.simple_root(i)
    elif text == "theta":
        root = datum.theta
    else:
        body = text.strip("[]() ")
        root = tuple(int(p) for p in body.split(","))
        if len(root) != datum.rank:
            raise ValueError(f"root {text!r} has wrong length for {datum.name}")
    root = tuple(sign * c for c in root)
    return datum.check_root(root)
