"""Concrete mutually orthogonal isometries on a truncated l2(N) and lifts.

The k-th isometry (k presented 1-based) acts on coordinate basis vectors by
S_k delta_m = delta_{pair(k-1, m)} where pair is the Cantor pairing

    pair(k, m) = (k + m)(k + m + 1)/2 + m.

Because the pairing is a bijection N x N -> N, the ranges of distinct
isometries are disjoint and every coordinate lies in the range of exactly one
S_k, so sum_k S_k S_k* = Id holds exactly, not just up to truncation; the
truncation to M coordinates only limits which images are materialized.

A coefficient matrix lifts to the operator sum_{i,j} c_{ij} S_i S_j*, acting
on delta_{pair(j-1, m)} as sum_i c_{ij} delta_{pair(i-1, m)}.  A lifted
column is valid when every output coordinate fits below M; operations track
validity per coordinate and report the minimal M that would remove the
overflow instead of silently zero-padding, which would fake violations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .matrices import CoeffMatrix
from .scalars import CFrac, Scalar


def cantor_pair(k: int, m: int) -> int:
    """Bijection N x N -> N on 0-based arguments."""
    s = k + m
    return s * (s + 1) // 2 + m


def cantor_unpair(x: int) -> tuple[int, int]:
    """Inverse of cantor_pair."""
    t = (math.isqrt(8 * x + 1) - 1) // 2
    m = x - t * (t + 1) // 2
    return t - m, m


class CuntzRep:
    """d materialized isometries acting on coordinates 0..M-1."""

    def __init__(self, alphabet: int, dim: int) -> None:
        if alphabet < 1:
            raise ValueError(f"alphabet must be positive, got {alphabet}")
        if dim < 1:
            raise ValueError(f"dim must be positive, got {dim}")
        self.alphabet = alphabet
        self.dim = dim

    @classmethod
    def covering(cls, alphabet: int, max_m: int) -> "CuntzRep":
        """Representation large enough that pair(k-1, m) fits for all
        k <= alphabet, m <= max_m."""
        return cls(alphabet, cantor_pair(alphabet - 1, max_m) + 1)

    def s_apply(self, k: int, m: int) -> int:
        """Image coordinate of S_k delta_m; may lie beyond the truncation."""
        if k < 1:
            raise ValueError(f"generator index {k} must be 1-based positive")
        return cantor_pair(k - 1, m)

    def s_star_apply(self, k: int, x: int) -> int | None:
        """m with pair(k-1, m) = x, or None when x is outside the range of S_k."""
        if k < 1:
            raise ValueError(f"generator index {k} must be 1-based positive")
        k0, m = cantor_unpair(x)
        return m if k0 == k - 1 else None

    def range_owner(self, x: int) -> tuple[int, int]:
        """(k, m) with S_k delta_m = delta_x; k is 1-based."""
        k0, m = cantor_unpair(x)
        return k0 + 1, m


@dataclass
class CuntzReport:
    alphabet: int
    dim: int
    isometry_failures: int
    orthogonality_failures: int
    completeness_failures: int
    checked_coordinates: int

    @property
    def passed(self) -> bool:
        return (self.isometry_failures == 0 and self.orthogonality_failures == 0
                and self.completeness_failures == 0)

    def to_dict(self) -> dict:
        return {
            "mode": "cuntz-check",
            "params": {"d": self.alphabet, "M": self.dim},
            "checks": [
                {"identity": "isometry-SstarS", "failures": self.isometry_failures},
                {"identity": "orthogonality-disjoint-ranges",
                 "failures": self.orthogonality_failures},
                {"identity": "completeness-ranges-cover",
                 "failures": self.completeness_failures},
            ],
            "checked_coordinates": self.checked_coordinates,
            "passed": self.passed,
        }


def verify_cuntz(rep: CuntzRep) -> CuntzReport:
    """Isometry, range disjointness, and completeness at the truncation.

    Every coordinate x < M is unpaired once; the unpairing both certifies
    that x lies in the range of exactly one generator (completeness plus
    disjointness, for all k including k > alphabet) and feeds the isometry
    round trip for the owning generator.  On top of that the round trip
    S_k* S_k = Id is driven directly for every materialized generator.
    """
    iso_bad = 0
    orth_bad = 0
    cover_bad = 0
    for x in range(rep.dim):
        k, m = rep.range_owner(x)
        if cantor_pair(k - 1, m) != x:
            cover_bad += 1
            continue
        if rep.s_star_apply(k, x) != m:
            iso_bad += 1
        if rep.s_star_apply(k + 1, x) is not None:
            orth_bad += 1
    for k in range(1, rep.alphabet + 1):
        for m in range(rep.dim):
            if rep.s_star_apply(k, rep.s_apply(k, m)) != m:
                iso_bad += 1
    return CuntzReport(rep.alphabet, rep.dim, iso_bad, orth_bad, cover_bad, rep.dim)


class SubspaceDecomposition:
    """Materialized ranges H_k = S_k S_k* (l2) as index sets below the truncation."""

    def __init__(self, rep: CuntzRep) -> None:
        self.rep = rep

    def index_set(self, k: int) -> list[int]:
        out = []
        m = 0
        while True:
            x = self.rep.s_apply(k, m)
            if x >= self.rep.dim:
                break
            out.append(x)
            m += 1
        return out

    def residual(self) -> list[int]:
        """Coordinates owned by generators beyond the materialized alphabet."""
        return [x for x in range(self.rep.dim)
                if self.rep.range_owner(x)[0] > self.rep.alphabet]


class LiftOverflow(ValueError):
    def __init__(self, message: str, required_dim: int) -> None:
        super().__init__(message)
        self.required_dim = required_dim


class LiftedOperator:
    """Sparse operator sum c_{ij} S_i S_j* on the truncated coordinate space.

    columns maps a valid input coordinate to its output vector; coordinates
    whose output would overflow the truncation are simply not valid, and
    required_dim records the truncation that would make every window
    coordinate valid.
    """

    def __init__(self, rep: CuntzRep, columns: dict[int, dict[int, Scalar]],
                 required_dim: int) -> None:
        self.rep = rep
        self.columns = columns
        self.required_dim = required_dim

    @property
    def valid_coordinates(self) -> set[int]:
        return set(self.columns)

    def apply(self, vector: dict[int, object]) -> dict[int, Scalar]:
        """Apply to a finitely supported vector over valid coordinates."""
        out: dict[int, Scalar] = {}
        for x, value in vector.items():
            col = self.columns.get(x)
            if col is None:
                raise LiftOverflow(
                    f"coordinate {x} is not valid at truncation {self.rep.dim}; "
                    f"need dim >= {self.required_dim}", self.required_dim)
            for y, entry in col.items():
                contrib = entry * value
                acc = out.get(y)
                acc = contrib if acc is None else acc + contrib
                if acc.is_zero():
                    out.pop(y, None)
                else:
                    out[y] = acc
        return out

    def scale(self, factor) -> "LiftedOperator":
        cols = {x: {y: e * factor for y, e in col.items()}
                for x, col in self.columns.items()}
        return LiftedOperator(self.rep, cols, self.required_dim)

    def __sub__(self, other: "LiftedOperator") -> "LiftedOperator":
        cols: dict[int, dict[int, Scalar]] = {}
        for x in self.valid_coordinates & other.valid_coordinates:
            col = dict(self.columns[x])
            for y, e in other.columns[x].items():
                acc = col.get(y, Scalar.zero()) - e
                if acc.is_zero():
                    col.pop(y, None)
                else:
                    col[y] = acc
            cols[x] = col
        return LiftedOperator(self.rep, cols,
                              max(self.required_dim, other.required_dim))

    def __matmul__(self, other: "LiftedOperator") -> "LiftedOperator":
        """Composition self after other, on coordinates where defined."""
        cols: dict[int, dict[int, Scalar]] = {}
        for x, col in other.columns.items():
            if any(y not in self.columns for y in col):
                continue
            cols[x] = self.apply(col)
        return LiftedOperator(self.rep, cols,
                              max(self.required_dim, other.required_dim))

    def commutator(self, other: "LiftedOperator") -> "LiftedOperator":
        return (self @ other) - (other @ self)


def lift(mat: CoeffMatrix, rep: CuntzRep) -> LiftedOperator:
    """Realize a windowed coefficient matrix through the isometries.

    Requires the window to fit in the alphabet.  Validity is tracked per
    coordinate: input delta_{pair(j-1, m)} is valid when every nonzero output
    delta_{pair(i-1, m)} fits below the truncation.
    """
    w = mat.window
    if w > rep.alphabet:
        raise ValueError(
            f"window {w} exceeds the materialized alphabet {rep.alphabet}")
    by_col: dict[int, list[tuple[int, Scalar]]] = {}
    for i, j, _ in mat.entries_on_window():
        by_col.setdefault(j, []).append((i, mat.entry(i, j)))
    columns: dict[int, dict[int, Scalar]] = {}
    required = rep.dim
    for j in range(1, w + 1):
        entries = by_col.get(j, [])
        m = 0
        while True:
            x = cantor_pair(j - 1, m)
            if x >= rep.dim:
                break
            images = [(cantor_pair(i - 1, m), e) for i, e in entries]
            worst = max((y for y, _ in images), default=x)
            if worst >= rep.dim:
                required = max(required, worst + 1)
            else:
                columns[x] = {y: e for y, e in images if not e.is_zero()}
            m += 1
    return LiftedOperator(rep, columns, required)


def lifts_agree(lifted: LiftedOperator, mat: CoeffMatrix) -> bool:
    """Entrywise agreement of a lifted operator with a windowed matrix.

    For every valid coordinate pair(j-1, m) with j in the window, the lifted
    column must equal {pair(i-1, m): entry(i, j)} exactly.
    """
    rep = lifted.rep
    for x, col in lifted.columns.items():
        j0, m = cantor_unpair(x)
        j = j0 + 1
        if j > mat.window:
            continue
        expected: dict[int, Scalar] = {}
        for i in range(1, mat.window + 1):
            e = mat.entry(i, j)
            if not e.is_zero():
                expected[cantor_pair(i - 1, m)] = e
        if set(col) != set(expected):
            return False
        for y, e in col.items():
            if not (e - expected[y]).is_zero():
                return False
    return True


@dataclass
class BoundReport:
    h_text: str
    k_index: int
    bound_exact: Fraction
    equality_exact: bool
    max_excess: float
    trials: int

    @property
    def passed(self) -> bool:
        return self.equality_exact and self.max_excess <= 1e-12

    def to_dict(self) -> dict:
        return {
            "mode": "bound-check",
            "params": {"h": self.h_text, "k": self.k_index, "trials": self.trials},
            "bound": str(self.bound_exact),
            "bound_float": float(self.bound_exact),
            "equality_exact": self.equality_exact,
            "max_excess": self.max_excess,
            "passed": self.passed,
        }


def column_bound(h, k: int, backend) -> Fraction:
    """B = sum_l <bracket action of h on e_k, e_l>^2, exactly.

    The entries of column k of the bracket-action matrix are
    core * sqrt(u2_l / u2_k), so the sum of squares is rational.  The column
    must be complete: every nonzero row must be materialized.
    """
    reach = backend.degree_of(k) + backend.band_bound(h)
    if backend.count_up_to(reach) > backend.size:
        raise ValueError(
            f"column {k} of the bracket action is not complete at size "
            f"{backend.size}; need size >= {backend.count_up_to(reach)}")
    u2k = backend.u2(k)
    total = Fraction(0)
    for i, c in backend.q_column_core(h, k).items():
        core = c.re if isinstance(c, CFrac) else Fraction(c)
        total += core * core * backend.u2(i) / u2k
    return total


def bound_check(h, k: int, backend, rep: CuntzRep, rng: Random,
                trials: int = 5, support: int = 8) -> BoundReport:
    """Exercise the restricted-norm identity of the bracket action on H_k.

    Lifts column k through S_i S_k*, applies it to random rational vectors
    supported in H_k, and verifies exactly that the output norm squared is
    B times the input norm squared; mutually disjoint isometry ranges mean
    the inequality ||T psi||^2 <= B ||psi||^2 is an equality on all of H_k.
    """
    from . import quantizer

    B = column_bound(h, k, backend)
    mat = quantizer.build_Q(h, backend)
    max_m = support + 2
    needed = CuntzRep(max(rep.alphabet, backend.size),
                      max(rep.dim, cantor_pair(backend.size - 1, max_m - 1) + 1))
    lifted = lift(mat, needed)
    equality = True
    worst = 0.0
    for _ in range(trials):
        vector: dict[int, Fraction] = {}
        for _ in range(support):
            m = rng.randrange(0, max_m)
            x = cantor_pair(k - 1, m)
            vector[x] = vector.get(x, Fraction(0)) + Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))
        vector = {x: v for x, v in vector.items() if v}
        if not vector:
            vector = {cantor_pair(k - 1, 0): Fraction(1)}
        norm_in = sum(v * v for v in vector.values())
        out = lifted.apply(vector)
        norm_out = Fraction(0)
        for e in out.values():
            sq = e * e.conjugate()
            norm_out += sq.as_cfrac().re
        if norm_out != B * norm_in:
            equality = False
        excess = float(norm_out) - float(B * norm_in)
        if excess > worst:
            worst = excess
    return BoundReport(str(h), k, B, equality, worst, trials)
