"""Windowed sparse coefficient matrices over a graded basis backend.

A CoeffMatrix holds a finite block of an infinite matrix indexed by the
backend's graded enumeration.  Entries factor as

    entry(i, j) = core(i, j) * sqrt(present_u2(i) / present_u2(j))

with a complex-rational core, so all algebra runs on exact rationals and the
radical normalization appears only at presentation time.

Soundness bookkeeping:

  band    an upper bound b on the graded reach of the underlying infinite
          operator: infinite entries vanish whenever the total degrees of the
          row and column indices differ by more than b.
  window  the number W of leading indices for which the stored block
          coincides with the infinite matrix; identity checks only ever
          read entries with row and column at most W.

For a product C = A B the infinite sum over the inner index k truncates
exactly: column j of B is supported on degrees up to degree(j) + band(B), so
whenever count_up_to(degree(j) + band(B)) fits inside both operand windows,
every contributing k is a trusted stored entry and C's column j is exact.
The product window is therefore the largest W at most min(W_A, W_B) with
count_up_to(degree(W) + band(B)) <= min(W_A, W_B), and the product band is
band(A) + band(B).  Entries beyond the computed window are not stored.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

from .scalars import CFRAC_ONE, CFrac, Scalar


class EmptyWindowError(ValueError):
    """A product's certified window came out empty; the truncation is too small."""

    def __init__(self, message: str, required_size: int) -> None:
        super().__init__(message)
        self.required_size = required_size


class CoeffMatrix:
    __slots__ = ("backend", "core", "band", "window")

    def __init__(self, backend, core: dict[tuple[int, int], CFrac],
                 band: int, window: int) -> None:
        self.backend = backend
        self.core = core
        self.band = band
        self.window = window

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zeros(backend, band: int = 0) -> "CoeffMatrix":
        return CoeffMatrix(backend, {}, band, backend.size)

    @staticmethod
    def identity(backend) -> "CoeffMatrix":
        core = {(i, i): CFRAC_ONE for i in range(1, backend.size + 1)}
        return CoeffMatrix(backend, core, 0, backend.size)

    @staticmethod
    def from_column_cores(backend, columns: dict[int, dict[int, Fraction]],
                          band: int) -> "CoeffMatrix":
        """Exactly computed columns over the full block; window is the full size."""
        core: dict[tuple[int, int], CFrac] = {}
        for j, col in columns.items():
            for i, value in col.items():
                c = CFrac.coerce(value)
                if c:
                    core[(i, j)] = c
        return CoeffMatrix(backend, core, band, backend.size)

    # ------------------------------------------------------------------
    # presentation

    @property
    def size(self) -> int:
        return self.backend.size

    def _present_ratio(self, i: int, j: int) -> Fraction:
        return self.backend.present_u2(i) / self.backend.present_u2(j)

    def entry(self, i: int, j: int) -> Scalar:
        """Exact entry value; only meaningful for i, j within the window."""
        c = self.core.get((i, j))
        if not c:
            return Scalar.zero()
        return Scalar.sqrt_rational(self._present_ratio(i, j)) * Scalar.from_cfrac(c)

    def entry_complex(self, i: int, j: int) -> complex:
        c = self.core.get((i, j))
        if not c:
            return 0j
        return complex(c) * math.sqrt(self._present_ratio(i, j))

    def entries_on_window(self) -> Iterator[tuple[int, int, CFrac]]:
        w = self.window
        for (i, j), c in self.core.items():
            if i <= w and j <= w and c:
                yield i, j, c

    def nnz(self) -> int:
        return sum(1 for _ in self.entries_on_window())

    # ------------------------------------------------------------------
    # linear operations

    def _check_backend(self, other: "CoeffMatrix") -> None:
        if self.backend is not other.backend:
            raise ValueError("matrices live over different basis backends")

    def __add__(self, other: "CoeffMatrix") -> "CoeffMatrix":
        self._check_backend(other)
        w = min(self.window, other.window)
        out: dict[tuple[int, int], CFrac] = {}
        for (i, j), c in self.core.items():
            if i <= w and j <= w:
                out[(i, j)] = c
        for (i, j), c in other.core.items():
            if i > w or j > w:
                continue
            acc = out.get((i, j))
            acc = c if acc is None else acc + c
            if acc:
                out[(i, j)] = acc
            else:
                out.pop((i, j), None)
        return CoeffMatrix(self.backend, out, max(self.band, other.band), w)

    def __sub__(self, other: "CoeffMatrix") -> "CoeffMatrix":
        return self + (-other)

    def __neg__(self) -> "CoeffMatrix":
        return CoeffMatrix(self.backend, {k: -c for k, c in self.core.items()},
                           self.band, self.window)

    def scale(self, factor) -> "CoeffMatrix":
        f = CFrac.coerce(factor)
        if not f:
            return CoeffMatrix(self.backend, {}, self.band, self.window)
        return CoeffMatrix(self.backend, {k: c * f for k, c in self.core.items()},
                           self.band, self.window)

    # ------------------------------------------------------------------
    # products

    def _product_window(self, other: "CoeffMatrix") -> int:
        limit = min(self.window, other.window)
        backend = self.backend
        if backend.count_up_to(other.band) > limit:
            raise EmptyWindowError(
                f"product window is empty: column degree reach {other.band} needs "
                f"{backend.count_up_to(other.band)} trusted indices, have {limit}",
                backend.count_up_to(other.band))
        d = 0
        while backend.count_up_to(d + 1 + other.band) <= limit:
            d += 1
        return min(limit, backend.count_up_to(d))

    def __matmul__(self, other: "CoeffMatrix") -> "CoeffMatrix":
        self._check_backend(other)
        w = self._product_window(other)
        limit = min(self.window, other.window)
        rows_by_k: dict[int, list[tuple[int, CFrac]]] = {}
        for (i, k), a in self.core.items():
            if i <= w and k <= limit:
                rows_by_k.setdefault(k, []).append((i, a))
        out: dict[tuple[int, int], CFrac] = {}
        for (k, j), b in other.core.items():
            if j > w or k > limit:
                continue
            rows = rows_by_k.get(k)
            if not rows:
                continue
            for i, a in rows:
                c = a * b
                acc = out.get((i, j))
                acc = c if acc is None else acc + c
                if acc:
                    out[(i, j)] = acc
                else:
                    out.pop((i, j), None)
        return CoeffMatrix(self.backend, out, self.band + other.band, w)

    def commutator(self, other: "CoeffMatrix") -> "CoeffMatrix":
        return (self @ other) - (other @ self)

    def conj_transpose(self) -> "CoeffMatrix":
        """Adjoint with respect to the backend's inner product.

        Core formula core*(i, j) = conj(core(j, i)) u2(j) / u2(i) holds in both
        normalization modes: the Gram ratio is what turns the transpose of a
        matrix over a merely orthogonal family into the true adjoint.
        """
        out: dict[tuple[int, int], CFrac] = {}
        w = self.window
        for (j, i), c in self.core.items():
            if i > w or j > w:
                continue
            ratio = self.backend.u2(j) / self.backend.u2(i)
            out[(i, j)] = c.conjugate() * ratio
        return CoeffMatrix(self.backend, out, self.band, w)

    # ------------------------------------------------------------------
    # comparison

    def common_window(self, other: "CoeffMatrix") -> int:
        self._check_backend(other)
        return min(self.window, other.window)

    def deviation(self, other: "CoeffMatrix") -> tuple[float, bool]:
        """(max absolute entry difference on the common window, exact equality)."""
        w = self.common_window(other)
        keys = set()
        for (i, j) in self.core:
            if i <= w and j <= w:
                keys.add((i, j))
        for (i, j) in other.core:
            if i <= w and j <= w:
                keys.add((i, j))
        worst = 0.0
        exact = True
        for (i, j) in keys:
            diff = self.core.get((i, j), CFrac()) - other.core.get((i, j), CFrac())
            if diff:
                exact = False
                mag = abs(diff) * math.sqrt(self._present_ratio(i, j))
                if mag > worst:
                    worst = mag
        return worst, exact

    def max_abs_on_window(self) -> float:
        worst = 0.0
        for i, j, c in self.entries_on_window():
            mag = abs(c) * math.sqrt(self._present_ratio(i, j))
            if mag > worst:
                worst = mag
        return worst

    def is_zero_on_window(self) -> bool:
        return all(not c for _, _, c in self.entries_on_window())

    def restrict(self, window: int) -> "CoeffMatrix":
        """Copy narrowed to a smaller window."""
        if window > self.window:
            raise ValueError(f"cannot widen window {self.window} to {window}")
        core = {(i, j): c for (i, j), c in self.core.items()
                if i <= window and j <= window}
        return CoeffMatrix(self.backend, core, self.band, window)

    def __repr__(self) -> str:
        return (f"CoeffMatrix(size={self.size}, band={self.band}, "
                f"window={self.window}, nnz={self.nnz()})")
