"""Exact multivariate polynomials over Q in the simple-coroot variables.

Variable ``x_i`` (1-based in text, 0-based internally) stands for the simple
coroot of the i-th simple root, so a coroot is a degree-one polynomial and
the symmetric algebra of the Cartan is ``Q[x_1, ..., x_n]``.  Localizations
are never built: every check made downstream (membership in a principal
linear ideal, equality, nonvanishing of a scalar) is unchanged by them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence, Union

if TYPE_CHECKING:
    from .rootdata import RootDatum

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational (floats are refused)")


def monomials(nvars: int, degree: int) -> list[Monomial]:
    """All exponent vectors of total ``degree``, in graded-lex order (x1^d first)."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    out.sort(reverse=True)
    return out


def count_monomials(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1)


class Poly:
    """Sparse polynomial: map from exponent tuple to nonzero Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Scalar] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        for mono, coef in (terms or {}).items():
            if len(mono) != nvars:
                raise ValueError(f"exponent {mono} has wrong length for {nvars} variables")
            c = as_fraction(coef)
            if c:
                clean[tuple(mono)] = clean.get(tuple(mono), Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Poly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        mono = [0] * nvars
        mono[i] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in rings of different rank")
            return other
        if isinstance(other, LinearForm):
            return other.to_poly()
        return Poly.constant(self.nvars, as_fraction(other))

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Poly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, (Poly, LinearForm)):
            c = as_fraction(other)
            return Poly(self.nvars, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Poly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative powers leave the polynomial ring")
        out = Poly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (Poly, LinearForm, int, Fraction)):
            try:
                other = self._coerce(other)
            except ValueError:
                return False
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(m) for m in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("evaluation point has wrong length")
        vals = [as_fraction(v) for v in point]
        total = Fraction(0)
        for mono, c in self.terms.items():
            t = c
            for v, e in zip(vals, mono):
                if e:
                    t *= v**e
            total += t
        return total

    def substitute(self, var: int, replacement: "Poly") -> "Poly":
        """Replace ``x_var`` by ``replacement`` everywhere."""
        out = Poly.zero(self.nvars)
        powers = {0: Poly.constant(self.nvars, 1)}
        for mono, c in self.terms.items():
            e = mono[var]
            if e not in powers:
                powers[e] = replacement**e
            rest = list(mono)
            rest[var] = 0
            out = out + Poly(self.nvars, {tuple(rest): c}) * powers[e]
        return out

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms by decreasing degree, then decreasing lex order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {format_poly(self)!r})"

    # wire formats -----------------------------------------------------

    def to_json(self) -> list:
        return [[list(m), str(c)] for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data) -> "Poly":
        if isinstance(data, str):
            return parse_poly(data, nvars)
        return cls(nvars, {tuple(m): as_fraction(c) for m, c in data})


@dataclass(frozen=True)
class LinearForm:
    """Homogeneous degree-one polynomial ``sum c_i x_i``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def pivot(self) -> int:
        """Index of the last nonzero coefficient."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        raise ValueError("the zero form has no pivot")

    def to_poly(self) -> Poly:
        n = self.nvars
        return Poly(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(self.coeffs)})

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        return sum((c * as_fraction(v) for c, v in zip(self.coeffs, point)), Fraction(0))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scale(self, k: Scalar) -> "LinearForm":
        k = as_fraction(k)
        return LinearForm(tuple(k * c for c in self.coeffs))

    def ratio_to(self, other: "LinearForm") -> Fraction | None:
        """``k`` with ``self == k * other``, or None if not proportional."""
        if other.is_zero():
            raise ValueError("cannot compare against the zero form")
        p = other.pivot()
        k = self.coeffs[p] / other.coeffs[p]
        if all(a == k * b for a, b in zip(self.coeffs, other.coeffs)):
            return k
        return None

    def is_proportional(self, other: "LinearForm") -> bool:
        return not self.is_zero() and self.ratio_to(other) is not None

    def __str__(self) -> str:
        return format_poly(self.to_poly())


def reduce_mod_linear(p: Poly, ell: LinearForm) -> Poly:
    """Canonical representative of ``p`` in ``S/(ell)``.

    The pivot variable (last nonzero coefficient of ``ell``) is eliminated
    by solving ``ell = 0`` for it.
    """
    if ell.is_zero():
        raise ValueError("cannot reduce modulo the zero form")
    if ell.nvars != p.nvars:
        raise ValueError("modulus and polynomial live in different rings")
    j = ell.pivot()
    lead = ell.coeffs[j]
    solved = Poly(
        p.nvars,
        {tuple(int(k == i) for k in range(p.nvars)): -c / lead for i, c in enumerate(ell.coeffs) if i != j},
    )
    return p.substitute(j, solved)


def divisible_by(p: Poly, ell: LinearForm) -> bool:
    return reduce_mod_linear(p, ell).is_zero()


def tau_pair(datum: "RootDatum", xi: Sequence[Scalar]) -> LinearForm:
    """The pairing of a weight with the canonical weight, as a linear form.

    ``xi`` is in fundamental-weight coordinates.  The coefficient of ``x_i``
    is ``(xi | omega_i)``, so substituting ``x_i -> <mu, alpha_i^vee>`` gives
    ``(xi | mu)``.
    """
    if len(xi) != datum.rank:
        raise ValueError("weight has wrong length")
    xi = [as_fraction(v) for v in xi]
    fg = datum.fundamental_gram
    return LinearForm(tuple(sum((xi[k] * fg[k][i] for k in range(datum.rank)), Fraction(0)) for i in range(datum.rank)))


def tau_quad(datum: "RootDatum") -> Poly:
    """``(tau|tau) = sum_{i,j} (omega_i|omega_j) x_i x_j``."""
    n = datum.rank
    terms: dict[Monomial, Fraction] = {}
    for i in range(n):
        for j in range(n):
            mono = [0] * n
            mono[i] += 1
            mono[j] += 1
            mono = tuple(mono)
            terms[mono] = terms.get(mono, 0) + datum.fundamental_gram[i][j]
    return Poly(n, terms)


# text format ----------------------------------------------------------

def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    """Render as ``c*x1^a1*...*xn^an + ...``; zero renders as ``0``."""
    if p.is_zero():
        return "0"
    pieces = []
    for mono, c in p.sorted_terms():
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(mag)] + factors)
        pieces.append(("-" if c < 0 else "+", body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^(?:x(\d+)(?:\^(\d+))?|(\d+(?:/\d+)?))$")


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse the text format produced by :func:`format_poly`."""
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial")
    if src[0] not in "+-":
        src = "+" + src
    parts = _TERM_SPLIT.split(src)
    # split yields ['', sign, term, sign, term, ...]
    if parts[0].strip():
        raise ValueError(f"cannot parse polynomial {text!r}")
    total = Poly.zero(nvars)
    for sign, term in zip(parts[1::2], parts[2::2]):
        if not term:
            raise ValueError(f"dangling sign in {text!r}")
        coef = Fraction(1)
        mono = [0] * nvars
        for factor in term.split("*"):
            factor = factor.strip()
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            if m.group(3) is not None:
                coef *= Fraction(m.group(3))
            else:
                i = int(m.group(1)) - 1
                if not 0 <= i < nvars:
                    raise ValueError(f"variable x{i + 1} out of range for {nvars} variables")
                mono[i] += int(m.group(2) or 1)
        total = total + Poly(nvars, {tuple(mono): -coef if sign == "-" else coef})
    return total


def linear_combination(polys: Iterable[Poly], coeffs: Iterable[Scalar], nvars: int) -> Poly:
    out = Poly.zero(nvars)
    for p, c in zip(polys, coeffs):
        if c:
            out = out + p * c
    return out
