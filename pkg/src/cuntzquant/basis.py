"""Hermite tensor bases on R^{2n} with exact normalization tracking.

Indices are multi-indices alpha in N^{2n} over the coordinates
(q1, ..., qn, p1, ..., pn), enumerated 1-based in graded order: lower total
degree first, ties broken lexicographically with the leading coordinate
varying last (so the degree-one block reads q1, ..., qn, p1, ..., pn).  A
BasisSpec of size N holds the first N indices of that enumeration; nothing
is ever box-capped per coordinate, which is what makes a size-N prefix
contain every multi-index of total degree up to its completeness cap.

Two Gaussian weights are supported:

  SQUARED   dmu = exp(-|x|^2) dx,   raw family = physicist Hermite products,
            <H_alpha, H_alpha> = 2^{|alpha|} alpha! pi^n
  STANDARD  dmu = exp(-|x|^2/2) dx, raw family = probabilist Hermite products,
            <He_alpha, He_alpha> = alpha! (2 pi)^n

Orthonormal elements divide the raw family by the square root of its Gram
value; the raw-Hermite normalization keeps the raw family itself and exposes
the Gram values.  Every coefficient is exact: a Fraction at the core level,
a Scalar (rational times sqrt times half power of pi) at presentation level.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .poly import Monomial, Polynomial, poisson_bracket
from .scalars import CFrac, Scalar


class GaussWeight(Enum):
    SQUARED = "exp(-|x|^2)"
    STANDARD = "exp(-|x|^2/2)"


class Normalization(Enum):
    ORTHONORMAL = "orthonormal"
    RAW = "raw-hermite-with-gram"


class TruncationOverflow(ValueError):
    """Observable degree exceeds the completeness cap of the truncation."""

    def __init__(self, message: str, required_size: int) -> None:
        super().__init__(message)
        self.required_size = required_size


# ----------------------------------------------------------------------
# 1D Hermite machinery, cached at module level

@lru_cache(maxsize=None)
def _power_in_hermite(e: int, physicist: bool) -> tuple[tuple[int, Fraction], ...]:
    """Coefficients of x**e over the 1D Hermite family, as (order, coeff) pairs.

    Built from the multiplication recurrences
      physicist:    x H_a  = (1/2) H_{a+1} + a H_{a-1}
      probabilist:  x He_a = He_{a+1} + a He_{a-1}
    """
    if e == 0:
        return ((0, Fraction(1)),)
    prev = dict(_power_in_hermite(e - 1, physicist))
    out: dict[int, Fraction] = {}
    up = Fraction(1, 2) if physicist else Fraction(1)
    for a, c in prev.items():
        out[a + 1] = out.get(a + 1, Fraction(0)) + c * up
        if a > 0:
            out[a - 1] = out.get(a - 1, Fraction(0)) + c * a
    return tuple(sorted((a, c) for a, c in out.items() if c))


@lru_cache(maxsize=None)
def _hermite_1d_coeffs(a: int, physicist: bool) -> tuple[Fraction, ...]:
    """Monomial coefficient list (degree-indexed) of H_a or He_a."""
    if a == 0:
        return (Fraction(1),)
    if a == 1:
        return (Fraction(0), Fraction(2) if physicist else Fraction(1))
    lower2 = _hermite_1d_coeffs(a - 2, physicist)
    lower1 = _hermite_1d_coeffs(a - 1, physicist)
    lead = Fraction(2) if physicist else Fraction(1)
    out = [Fraction(0)] * (a + 1)
    for d, c in enumerate(lower1):
        out[d + 1] += lead * c
    scale = Fraction(2 * (a - 1)) if physicist else Fraction(a - 1)
    for d, c in enumerate(lower2):
        out[d] -= scale * c
    return tuple(out)


def _compositions_desc(total: int, parts: int) -> Iterator[Monomial]:
    """Compositions of total into parts, leading component descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions_desc(total - first, parts - 1):
            yield (first,) + rest


# ----------------------------------------------------------------------

class BasisSpec:
    """A finite graded prefix of the Hermite tensor basis on R^{2n}."""

    def __init__(self, dim_n: int, size: int,
                 weight: GaussWeight = GaussWeight.SQUARED,
                 normalization: Normalization = Normalization.ORTHONORMAL) -> None:
        if dim_n < 1:
            raise ValueError(f"dim_n must be at least 1, got {dim_n}")
        if size < 1:
            raise ValueError(f"size must be at least 1, got {size}")
        self.dim_n = dim_n
        self.size = size
        self.weight = weight
        self.normalization = normalization
        self._alphas: list[Monomial] = []
        degree = 0
        while len(self._alphas) < size:
            for alpha in _compositions_desc(degree, 2 * dim_n):
                self._alphas.append(alpha)
                if len(self._alphas) == size:
                    break
            degree += 1
        self._index: dict[Monomial, int] = {a: i + 1 for i, a in enumerate(self._alphas)}
        self._raw_cache: dict[int, Polynomial] = {}

    @classmethod
    def covering_degree(cls, dim_n: int, degree: int, **kwargs) -> "BasisSpec":
        """Smallest spec whose enumeration contains every index of total degree <= degree."""
        return cls(dim_n, math.comb(degree + 2 * dim_n, 2 * dim_n), **kwargs)

    # ------------------------------------------------------------------
    # enumeration

    def alpha_of(self, i: int) -> Monomial:
        if not 1 <= i <= self.size:
            raise IndexError(f"basis index {i} out of range 1..{self.size}")
        return self._alphas[i - 1]

    def index_of(self, alpha: Monomial) -> int | None:
        return self._index.get(tuple(alpha))

    def degree_of(self, i: int) -> int:
        return sum(self.alpha_of(i))

    def count_up_to(self, degree: int) -> int:
        """How many multi-indices of the infinite enumeration have total degree <= degree."""
        if degree < 0:
            return 0
        return math.comb(degree + 2 * self.dim_n, 2 * self.dim_n)

    @property
    def complete_degree_cap(self) -> int:
        """Largest d such that every multi-index of degree <= d is enumerated."""
        d = 0
        while self.count_up_to(d + 1) <= self.size:
            d += 1
        return d if self.count_up_to(d) <= self.size else -1

    def _resolve(self, i) -> int:
        if isinstance(i, int):
            return i
        idx = self.index_of(i)
        if idx is None:
            raise IndexError(f"multi-index {tuple(i)} not enumerated at size {self.size}")
        return idx

    # ------------------------------------------------------------------
    # normalization data

    def u2(self, i: int) -> Fraction:
        """Gram weight without the pi mass: 2^{|a|} a! (SQUARED) or a! (STANDARD)."""
        alpha = self.alpha_of(i)
        value = 1
        for e in alpha:
            value *= math.factorial(e)
        if self.weight is GaussWeight.SQUARED:
            value <<= sum(alpha)
        return Fraction(value)

    def present_u2(self, i: int) -> Fraction:
        """Diagonal presentation weight for matrix entries (1 in raw normalization)."""
        if self.normalization is Normalization.RAW:
            return Fraction(1)
        return self.u2(i)

    def _mass(self) -> Scalar:
        """sqrt of the Gaussian volume factor: pi^{n/2} or (2 pi)^{n/2}."""
        n = self.dim_n
        if self.weight is GaussWeight.SQUARED:
            return Scalar.pi_power(n)
        return Scalar.term(1, 2 ** n, n)

    def gram(self, i) -> Scalar:
        """<raw_i, raw_i> including the pi mass."""
        idx = self._resolve(i)
        m = self._mass()
        return Scalar.from_rational(self.u2(idx)) * m * m

    # ------------------------------------------------------------------
    # elements

    def raw_element(self, i) -> Polynomial:
        """Product Hermite polynomial with exact Fraction coefficients."""
        idx = self._resolve(i)
        cached = self._raw_cache.get(idx)
        if cached is not None:
            return cached
        alpha = self.alpha_of(idx)
        physicist = self.weight is GaussWeight.SQUARED
        poly = Polynomial.one(self.dim_n)
        for v, e in enumerate(alpha):
            coeffs = _hermite_1d_coeffs(e, physicist)
            factor = Polynomial(self.dim_n, {
                tuple(d if u == v else 0 for u in range(2 * self.dim_n)): c
                for d, c in enumerate(coeffs) if c})
            poly = poly * factor
        self._raw_cache[idx] = poly
        return poly

    def basis_element(self, i) -> Polynomial:
        """The enumerated element as a polynomial with Scalar coefficients."""
        idx = self._resolve(i)
        raw = self.raw_element(idx)
        if self.normalization is Normalization.RAW:
            return raw.map_coefficients(Scalar.from_rational)
        norm = self.gram(idx).inverse()
        scale = Scalar.sqrt_rational(self.u2(idx)) * self._mass() * norm
        return raw.map_coefficients(lambda c: scale * c)

    # ------------------------------------------------------------------
    # expansion

    def hermite_coeffs(self, f: Polynomial) -> dict[Monomial, Fraction]:
        """Exact coefficients of f over the raw Hermite family (all degrees)."""
        if f.dim_n != self.dim_n:
            raise ValueError(f"observable over {f.dim_n} pairs, basis over {self.dim_n}")
        physicist = self.weight is GaussWeight.SQUARED
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in f.terms.items():
            partial: dict[Monomial, Fraction] = {(): coeff}
            for e in mono:
                table = _power_in_hermite(e, physicist)
                grown: dict[Monomial, Fraction] = {}
                for prefix, c in partial.items():
                    for a, t in table:
                        key = prefix + (a,)
                        acc = grown.get(key)
                        acc = c * t if acc is None else acc + c * t
                        if acc:
                            grown[key] = acc
                        else:
                            grown.pop(key, None)
                partial = grown
            for alpha, c in partial.items():
                acc = out.get(alpha)
                acc = c if acc is None else acc + c
                if acc:
                    out[alpha] = acc
                else:
                    out.pop(alpha, None)
        return out

    def _check_cap(self, f: Polynomial) -> None:
        cap = self.complete_degree_cap
        if f.degree() > cap:
            need = self.count_up_to(f.degree())
            raise TruncationOverflow(
                f"observable degree {f.degree()} exceeds completeness cap {cap} "
                f"at size {self.size}; need size >= {need}", need)

    def expand(self, f: Polynomial) -> dict[int, Scalar]:
        """Expansion coefficients of f over the enumerated system.

        Orthonormal mode returns <f, e_i>; raw mode returns the coefficient
        of f over raw_element(i), which is the dual pairing of the
        raw-with-Gram system.  Raises TruncationOverflow if f has degree
        beyond the completeness cap.
        """
        self._check_cap(f)
        coeffs = self.hermite_coeffs(f)
        out: dict[int, Scalar] = {}
        for alpha, c in coeffs.items():
            idx = self._index.get(alpha)
            if idx is None:
                continue
            out[idx] = self._present_coeff(idx, c)
        return out

    def _present_coeff(self, idx: int, hcoeff: Fraction) -> Scalar:
        if self.normalization is Normalization.RAW:
            return Scalar.from_rational(hcoeff)
        return Scalar.sqrt_rational(self.u2(idx)) * self._mass() * hcoeff

    def pair(self, f: Polynomial, i) -> Scalar:
        """Expansion coefficient of f against index i (int or multi-index)."""
        idx = self._resolve(i)
        coeffs = self.hermite_coeffs(f)
        c = coeffs.get(self.alpha_of(idx))
        if not c:
            return Scalar.zero()
        return self._present_coeff(idx, c)

    def reconstruct(self, coeffs: dict[int, Scalar]) -> Polynomial:
        """Sum of coeff * basis_element(i); inverse of expand on its image."""
        total = Polynomial.zero(self.dim_n)
        for idx, c in coeffs.items():
            total = total + self.basis_element(idx).map_coefficients(lambda x: c * x)
        return total

    # ------------------------------------------------------------------
    # quantizer backend interface

    @property
    def n(self) -> int:
        return self.dim_n

    @property
    def label(self) -> str:
        return (f"hermite(n={self.dim_n}, size={self.size}, "
                f"weight={self.weight.value}, norm={self.normalization.value})")

    def band_bound(self, h: Polynomial) -> int:
        return h.degree()

    def _column_cores(self, g: Polynomial) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for alpha, c in self.hermite_coeffs(g).items():
            idx = self._index.get(alpha)
            if idx is not None:
                out[idx] = c
        return out

    def q_column_core(self, h: Polynomial, j: int) -> dict[int, Fraction]:
        """Core coefficients of column j of the bracket action f -> {h, f}."""
        return self._column_cores(poisson_bracket(h, self.raw_element(j)))

    def r_column_core(self, h: Polynomial, j: int) -> dict[int, Fraction]:
        """Core coefficients of column j of multiplication by h."""
        return self._column_cores(h * self.raw_element(j))

    def obs_bracket(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return poisson_bracket(f, g)

    def obs_mul(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return f * g

    def obs_one(self) -> Polynomial:
        return Polynomial.one(self.dim_n)

    def obs_pow(self, f: Polynomial, m: int) -> Polynomial:
        return f ** m

    def obs_is_zero(self, f: Polynomial) -> bool:
        return f.is_zero()

    def coordinates(self) -> list[tuple[str, Polynomial, Polynomial]]:
        """Conjugate coordinate pairs as (label, q-like, p-like) triples."""
        return [(f"{k}", Polynomial.q(self.dim_n, k), Polynomial.p(self.dim_n, k))
                for k in range(1, self.dim_n + 1)]

    def __repr__(self) -> str:
        return f"BasisSpec({self.label})"
