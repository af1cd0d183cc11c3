"""Finite-mode chaos expansion with a weighted bracket quantizer backend.

A configuration fixes K field modes and a polynomial chaos order cap C.
Elements are finite combinations of Wick monomials

    :xi^alpha: = prod_v :xi_v^{alpha_v}:,

indexed by multi-indices alpha over the 2K coordinates

    (q_1, ..., q_K, p_1, ..., p_K),

where xi_{q_k} and xi_{p_k} are the first-chaos variables of the two field
components in mode k.  Under the canonical bilinear pairing the Wick
monomials are orthogonal with <<:xi^alpha:, :xi^alpha:>> = alpha!, so the
normalized family b_alpha = :xi^alpha: / sqrt(alpha!) is orthonormal; the
quantizer backend presents matrices with respect to b_alpha, which makes
R(1) the identity.

Coefficients are exact rationals throughout.  User-level elements keep
total order <= C; intermediate results of products and brackets may reach
the hard cap 2C, beyond which OrderOverflow is raised rather than silently
truncating.

The bracket is weighted by exact rational coefficients lam_1, ..., lam_K:

    {f, g}_Q = sum_n lam_n (d_{q_n} f d_{p_n} g - d_{p_n} f d_{q_n} g),

with all products taken pointwise.  The pointwise product linearizes per
coordinate through

    :xi_v^a: :xi_v^b: = sum_r C(a,r) C(b,r) r! :xi_v^{a+b-2r}:.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iter_product

from .basis import _compositions_desc
from .poly import Polynomial
from .scalars import CFrac

MultiIndex = tuple[int, ...]


class OrderOverflow(Exception):
    """A chaos element would exceed the governing order cap."""

    def __init__(self, required_cap: int, cap: int) -> None:
        super().__init__(f"order {required_cap} exceeds the cap {cap}")
        self.required_cap = required_cap


class ChaosParseError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _default_eigenvalues(modes: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(2 * n + 2) for n in range(1, modes + 1))


@dataclass(frozen=True)
class WhiteNoiseConfig:
    """K field modes, order cap C, bracket weights, smoothing eigenvalues.

    lam are the exact rational bracket weights (default: all one).  The
    eigenvalues a_n of the smoothing operator drive the norm scale; they
    must be positive and nondecreasing (default a_n = 2n + 2).
    """

    modes: int
    order_cap: int
    lam: tuple[Fraction, ...] = ()
    a_eigenvalues: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        if self.modes < 1:
            raise ValueError(f"modes must be >= 1, got {self.modes}")
        if self.order_cap < 1:
            raise ValueError(f"order_cap must be >= 1, got {self.order_cap}")
        lam = self.lam or tuple(Fraction(1) for _ in range(self.modes))
        lam = tuple(Fraction(x) for x in lam)
        if len(lam) != self.modes:
            raise ValueError(f"need {self.modes} bracket weights, got {len(lam)}")
        eig = self.a_eigenvalues or _default_eigenvalues(self.modes)
        eig = tuple(Fraction(x) for x in eig)
        if len(eig) != self.modes:
            raise ValueError(f"need {self.modes} eigenvalues, got {len(eig)}")
        if any(a <= 0 for a in eig):
            raise ValueError("eigenvalues must be positive")
        if any(eig[i] > eig[i + 1] for i in range(len(eig) - 1)):
            raise ValueError("eigenvalues must be nondecreasing")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a_eigenvalues", eig)

    @property
    def coords(self) -> int:
        return 2 * self.modes

    @property
    def hard_cap(self) -> int:
        return 2 * self.order_cap

    def eigenvalue_of_coord(self, v: int) -> Fraction:
        return self.a_eigenvalues[v % self.modes]

    def smoothing_inverse_norm(self) -> float:
        """Operator norm of the inverse smoothing action, 1 / a_1."""
        return float(1 / self.a_eigenvalues[0])

    def smoothing_inverse_hs(self) -> float:
        """Hilbert-Schmidt surrogate over the materialized modes."""
        return math.sqrt(float(sum(1 / (a * a) for a in self.a_eigenvalues)))


class ChaosPoly:
    """Rational combination of Wick monomials over 2K coordinates."""

    __slots__ = ("cfg", "terms")

    def __init__(self, cfg: WhiteNoiseConfig,
                 terms: dict[MultiIndex, Fraction] | None = None) -> None:
        self.cfg = cfg
        self.terms: dict[MultiIndex, Fraction] = {}
        if terms:
            for alpha, c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                if len(alpha) != cfg.coords:
                    raise ValueError(
                        f"multi-index length {len(alpha)}, want {cfg.coords}")
                order = sum(alpha)
                if order > cfg.hard_cap:
                    raise OrderOverflow(order, cfg.hard_cap)
                self.terms[tuple(alpha)] = c

    @classmethod
    def zero(cls, cfg: WhiteNoiseConfig) -> "ChaosPoly":
        return cls(cfg)

    @classmethod
    def constant(cls, cfg: WhiteNoiseConfig, value) -> "ChaosPoly":
        return cls(cfg, {(0,) * cfg.coords: Fraction(value)})

    @classmethod
    def first_chaos(cls, cfg: WhiteNoiseConfig, kind: str, mode: int) -> "ChaosPoly":
        """The first-chaos variable xi_{q_mode} or xi_{p_mode}, mode 1-based."""
        if kind not in ("q", "p"):
            raise ValueError(f"kind must be 'q' or 'p', got {kind!r}")
        if not 1 <= mode <= cfg.modes:
            raise ValueError(f"mode {mode} outside 1..{cfg.modes}")
        v = (mode - 1) + (cfg.modes if kind == "p" else 0)
        alpha = tuple(1 if u == v else 0 for u in range(cfg.coords))
        return cls(cfg, {alpha: Fraction(1)})

    @classmethod
    def wick_monomial(cls, cfg: WhiteNoiseConfig, alpha: MultiIndex) -> "ChaosPoly":
        return cls(cfg, {tuple(alpha): Fraction(1)})

    def __add__(self, other: "ChaosPoly") -> "ChaosPoly":
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            acc = out.get(alpha, Fraction(0)) + c
            if acc:
                out[alpha] = acc
            else:
                out.pop(alpha, None)
        return ChaosPoly(self.cfg, out)

    def __sub__(self, other: "ChaosPoly") -> "ChaosPoly":
        return self + (-other)

    def __neg__(self) -> "ChaosPoly":
        return ChaosPoly(self.cfg, {a: -c for a, c in self.terms.items()})

    def scale(self, factor) -> "ChaosPoly":
        f = Fraction(factor)
        if not f:
            return ChaosPoly.zero(self.cfg)
        return ChaosPoly(self.cfg, {a: f * c for a, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(a) for a in self.terms)

    def coefficient(self, alpha: MultiIndex) -> Fraction:
        return self.terms.get(tuple(alpha), Fraction(0))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ChaosPoly) and self.cfg == other.cfg
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.cfg.modes, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        K = self.cfg.modes
        parts = []
        for alpha in sorted(self.terms, key=lambda a: (sum(a), a)):
            c = self.terms[alpha]
            if any(alpha):
                items = []
                for v, e in enumerate(alpha):
                    if not e:
                        continue
                    name = f"q{v + 1}" if v < K else f"p{v - K + 1}"
                    items.append(name if e == 1 else f"{name}^{e}")
                body = ":" + " ".join(items) + ":"
                if c == 1:
                    parts.append(body)
                elif c == -1:
                    parts.append(f"-{body}")
                else:
                    parts.append(f"{c}*{body}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"ChaosPoly(K={self.cfg.modes}, {self.terms!r})"


@lru_cache(maxsize=None)
def _linearize_1d(a: int, b: int) -> tuple[tuple[int, Fraction], ...]:
    """:x^a: :x^b: = sum over r of C(a,r) C(b,r) r! :x^{a+b-2r}:."""
    out = []
    for r in range(min(a, b) + 1):
        out.append((a + b - 2 * r,
                    Fraction(math.comb(a, r) * math.comb(b, r) * math.factorial(r))))
    return tuple(out)


def pointwise_product(f: ChaosPoly, g: ChaosPoly) -> ChaosPoly:
    cfg = f.cfg
    out: dict[MultiIndex, Fraction] = {}
    for alpha, ca in f.terms.items():
        for beta, cb in g.terms.items():
            order = sum(alpha) + sum(beta)
            if order > cfg.hard_cap:
                raise OrderOverflow(order, cfg.hard_cap)
            base = ca * cb
            choices = [_linearize_1d(alpha[v], beta[v]) for v in range(cfg.coords)]
            for combo in iter_product(*choices):
                gamma = tuple(e for e, _ in combo)
                c = base
                for _, factor in combo:
                    c *= factor
                acc = out.get(gamma, Fraction(0)) + c
                if acc:
                    out[gamma] = acc
                else:
                    out.pop(gamma, None)
    return ChaosPoly(cfg, out)


def wick_product(f: ChaosPoly, g: ChaosPoly) -> ChaosPoly:
    cfg = f.cfg
    out: dict[MultiIndex, Fraction] = {}
    for alpha, ca in f.terms.items():
        for beta, cb in g.terms.items():
            gamma = tuple(a + b for a, b in zip(alpha, beta))
            order = sum(gamma)
            if order > cfg.hard_cap:
                raise OrderOverflow(order, cfg.hard_cap)
            acc = out.get(gamma, Fraction(0)) + ca * cb
            if acc:
                out[gamma] = acc
            else:
                out.pop(gamma, None)
    return ChaosPoly(cfg, out)


def coordinate_derivative(f: ChaosPoly, v: int) -> ChaosPoly:
    """d/d xi_v lowers the v-th entry: maps :xi^alpha: to alpha_v :xi^{alpha-e_v}:."""
    out: dict[MultiIndex, Fraction] = {}
    for alpha, c in f.terms.items():
        if not alpha[v]:
            continue
        beta = tuple(e - 1 if u == v else e for u, e in enumerate(alpha))
        out[beta] = out.get(beta, Fraction(0)) + c * alpha[v]
    return ChaosPoly(f.cfg, out)


def directional_derivative(f: ChaosPoly, direction) -> ChaosPoly:
    """Derivative along a rational coefficient vector over the 2K coordinates."""
    coeffs = [Fraction(x) for x in direction]
    if len(coeffs) != f.cfg.coords:
        raise ValueError(f"direction has {len(coeffs)} entries, want {f.cfg.coords}")
    total = ChaosPoly.zero(f.cfg)
    for v, u in enumerate(coeffs):
        if u:
            total = total + coordinate_derivative(f, v).scale(u)
    return total


def wn_bracket(f: ChaosPoly, g: ChaosPoly) -> ChaosPoly:
    cfg = f.cfg
    total = ChaosPoly.zero(cfg)
    for n in range(cfg.modes):
        lam = cfg.lam[n]
        if not lam:
            continue
        qv, pv = n, cfg.modes + n
        piece = (pointwise_product(coordinate_derivative(f, qv),
                                   coordinate_derivative(g, pv))
                 - pointwise_product(coordinate_derivative(f, pv),
                                     coordinate_derivative(g, qv)))
        total = total + piece.scale(lam)
    return total


def s_transform(f: ChaosPoly) -> Polynomial:
    """Polynomial in the 2K dual variables; sends :xi^alpha: to xi^alpha.

    Intertwines the Wick product with the ordinary product.
    """
    return Polynomial(f.cfg.modes, {a: c for a, c in f.terms.items()})


def duality(f: ChaosPoly, g: ChaosPoly) -> Fraction:
    """Bilinear pairing: sum over alpha of alpha! c_alpha d_alpha."""
    total = Fraction(0)
    for alpha, c in f.terms.items():
        d = g.terms.get(alpha)
        if d:
            total += c * d * math.prod(math.factorial(e) for e in alpha)
    return total


def hida_norm(f: ChaosPoly, p: int = 0, beta: float = 0.0) -> float:
    """Weighted chaos norm; p scales mode v by a_v^p, beta weights order n by (n!)^beta.

    With p = 0, beta = 0 this is the square root of duality(f, f).
    """
    cfg = f.cfg
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    exact = Fraction(0)
    inexact = 0.0
    for alpha, c in f.terms.items():
        weight = c * c * math.prod(math.factorial(e) for e in alpha)
        for v, e in enumerate(alpha):
            if e:
                weight *= cfg.eigenvalue_of_coord(v) ** (2 * p * e)
        if beta:
            inexact += float(weight) * math.factorial(sum(alpha)) ** beta
        else:
            exact += weight
    return math.sqrt(inexact if beta else float(exact))


@dataclass(frozen=True)
class EstimateReport:
    """Observed-to-budget ratio for the directed bracket half-sum.

    The budget is max_n a_n^{-q} * sum_n |lam_n| * |f|_{p+q} * |g|_{p+q};
    the constant in front is left at one, so the ratio is informative
    rather than a bound certificate.  vacuous marks a zero budget with a
    zero left side (constants bracket to zero).
    """

    p: int
    q: int
    lhs_norm: float
    budget: float
    ratio: float
    vacuous: bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p, "q": self.q, "lhs_norm": self.lhs_norm,
            "budget": self.budget, "ratio": self.ratio,
            "vacuous": self.vacuous, "passed": self.passed,
        }


def estimate_check(f: ChaosPoly, g: ChaosPoly, p: int = 0, q: int = 1) -> EstimateReport:
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    cfg = f.cfg
    half = ChaosPoly.zero(cfg)
    for n in range(cfg.modes):
        if cfg.lam[n]:
            half = half + pointwise_product(
                coordinate_derivative(f, n),
                coordinate_derivative(g, cfg.modes + n)).scale(cfg.lam[n])
    lhs = hida_norm(half, p)
    factor = max(float(a ** (-q)) for a in cfg.a_eigenvalues)
    lam_sum = float(sum(abs(x) for x in cfg.lam))
    budget = factor * lam_sum * hida_norm(f, p + q) * hida_norm(g, p + q)
    if budget == 0.0:
        return EstimateReport(p, q, lhs, 0.0, 0.0, True, lhs == 0.0)
    ratio = lhs / budget
    return EstimateReport(p, q, lhs, budget, ratio, False, math.isfinite(ratio))


# ----------------------------------------------------------------------
# text form


def parse_chaos(text: str, cfg: WhiteNoiseConfig) -> ChaosPoly:
    """Sums of rational multiples of Wick blocks, e.g. "3/2*:q1^2 p2: - 1".

    A block is a colon-delimited run of coordinate powers; coordinates are
    q1..qK and p1..pK.  Parsed elements must respect the order cap.
    """
    parser = _ChaosParser(text, cfg)
    out = parser.parse()
    order = out.degree()
    if order > cfg.order_cap:
        raise OrderOverflow(order, cfg.order_cap)
    return out


class _ChaosParser:
    def __init__(self, text: str, cfg: WhiteNoiseConfig) -> None:
        self.text = text
        self.cfg = cfg
        self.pos = 0

    def parse(self) -> ChaosPoly:
        total = self._term_list()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ChaosParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return total

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _term_list(self) -> ChaosPoly:
        self._skip_ws()
        negate = False
        if self._peek() in ("+", "-"):
            negate = self._peek() == "-"
            self.pos += 1
        total = self._term()
        if negate:
            total = -total
        while True:
            self._skip_ws()
            op = self._peek()
            if op not in ("+", "-"):
                return total
            self.pos += 1
            nxt = self._term()
            total = total + (-nxt if op == "-" else nxt)

    def _term(self) -> ChaosPoly:
        self._skip_ws()
        if self._peek() == ":":
            return self._block()
        coeff = self._rational()
        self._skip_ws()
        if self._peek() == "*":
            self.pos += 1
            self._skip_ws()
            if self._peek() != ":":
                raise ChaosParseError("expected a Wick block after '*'", self.pos)
            return self._block().scale(coeff)
        return ChaosPoly.constant(self.cfg, coeff)

    def _rational(self) -> Fraction:
        self._skip_ws()
        start = self.pos
        while self._peek().isdigit():
            self.pos += 1
        if self.pos == start:
            raise ChaosParseError("expected a number or Wick block", self.pos)
        num = int(self.text[start:self.pos])
        if self._peek() == "/":
            self.pos += 1
            dstart = self.pos
            while self._peek().isdigit():
                self.pos += 1
            if self.pos == dstart:
                raise ChaosParseError("expected a denominator", self.pos)
            return Fraction(num, int(self.text[dstart:self.pos]))
        return Fraction(num)

    def _block(self) -> ChaosPoly:
        self.pos += 1
        alpha = [0] * self.cfg.coords
        saw_item = False
        while True:
            self._skip_ws()
            ch = self._peek()
            if ch == ":":
                self.pos += 1
                if not saw_item:
                    raise ChaosParseError("empty Wick block", self.pos - 1)
                return ChaosPoly.wick_monomial(self.cfg, tuple(alpha))
            if ch not in ("q", "p"):
                raise ChaosParseError("expected q<k>, p<k>, or closing ':'", self.pos)
            kind = ch
            self.pos += 1
            istart = self.pos
            while self._peek().isdigit():
                self.pos += 1
            if self.pos == istart:
                raise ChaosParseError("expected a mode index", self.pos)
            mode = int(self.text[istart:self.pos])
            if not 1 <= mode <= self.cfg.modes:
                raise ChaosParseError(
                    f"mode {mode} outside 1..{self.cfg.modes}", istart)
            power = 1
            if self._peek() == "^":
                self.pos += 1
                pstart = self.pos
                while self._peek().isdigit():
                    self.pos += 1
                if self.pos == pstart:
                    raise ChaosParseError("expected an exponent", self.pos)
                power = int(self.text[pstart:self.pos])
            v = (mode - 1) + (self.cfg.modes if kind == "p" else 0)
            alpha[v] += power
            saw_item = True


# ----------------------------------------------------------------------
# quantizer backend


class WickBackend:
    """Quantizer backend over the first `size` Wick monomials.

    Raw elements are the Wick monomials :xi^alpha: with Gram weight
    alpha!; presented matrices act on the orthonormal b_alpha.  Bracket
    columns use the weighted bracket of the configuration, so the induced
    coordinate commutators carry the weights lam_n.
    """

    def __init__(self, cfg: WhiteNoiseConfig, size: int) -> None:
        if size < 1:
            raise ValueError(f"size must be >= 1, got {size}")
        self.cfg = cfg
        self.size = size
        self._alphas: list[MultiIndex] = []
        self._index: dict[MultiIndex, int] = {}
        degree = 0
        while len(self._alphas) < size:
            for alpha in _compositions_desc(degree, cfg.coords):
                self._alphas.append(alpha)
                self._index[alpha] = len(self._alphas)
                if len(self._alphas) == size:
                    break
            degree += 1
        if self.degree_of(size) > cfg.order_cap:
            raise ValueError(
                f"size {size} reaches order {self.degree_of(size)}, "
                f"beyond the cap {cfg.order_cap}")

    @property
    def n(self) -> int:
        return self.cfg.modes

    @property
    def label(self) -> str:
        return f"wick-chaos[K={self.cfg.modes}]"

    def alpha_of(self, i: int) -> MultiIndex:
        return self._alphas[i - 1]

    def index_of(self, alpha: MultiIndex) -> int | None:
        return self._index.get(tuple(alpha))

    def degree_of(self, i: int) -> int:
        return sum(self._alphas[i - 1])

    def count_up_to(self, degree: int) -> int:
        return math.comb(degree + self.cfg.coords, self.cfg.coords)

    def u2(self, i: int) -> Fraction:
        return Fraction(math.prod(math.factorial(e) for e in self.alpha_of(i)))

    def present_u2(self, i: int) -> Fraction:
        return self.u2(i)

    def band_bound(self, h: ChaosPoly) -> int:
        return h.degree()

    def _column(self, element: ChaosPoly) -> dict[int, CFrac]:
        out = {}
        for alpha, c in element.terms.items():
            i = self._index.get(alpha)
            if i is not None:
                out[i] = CFrac(c)
        return out

    def q_column_core(self, h: ChaosPoly, j: int) -> dict[int, CFrac]:
        raw = ChaosPoly.wick_monomial(self.cfg, self.alpha_of(j))
        return self._column(wn_bracket(h, raw))

    def r_column_core(self, h: ChaosPoly, j: int) -> dict[int, CFrac]:
        raw = ChaosPoly.wick_monomial(self.cfg, self.alpha_of(j))
        return self._column(pointwise_product(h, raw))

    def obs_bracket(self, f: ChaosPoly, g: ChaosPoly) -> ChaosPoly:
        return wn_bracket(f, g)

    def obs_mul(self, f: ChaosPoly, g: ChaosPoly) -> ChaosPoly:
        return pointwise_product(f, g)

    def obs_one(self) -> ChaosPoly:
        return ChaosPoly.constant(self.cfg, 1)

    def obs_pow(self, f: ChaosPoly, m: int) -> ChaosPoly:
        out = self.obs_one()
        for _ in range(m):
            out = pointwise_product(out, f)
        return out

    def obs_is_zero(self, f: ChaosPoly) -> bool:
        return f.is_zero()

    def coordinates(self) -> list[tuple[str, ChaosPoly, ChaosPoly]]:
        return [(str(k),
                 ChaosPoly.first_chaos(self.cfg, "q", k),
                 ChaosPoly.first_chaos(self.cfg, "p", k))
                for k in range(1, self.cfg.modes + 1)]


def wn_quantize(phi: ChaosPoly, size: int):
    """Windowed matrices (Q(phi), R(phi), Qhat(phi)) plus the backend used."""
    from .quantizer import build_Q, build_Qhat, build_R

    cfg = phi.cfg
    if phi.degree() > cfg.order_cap:
        raise OrderOverflow(phi.degree(), cfg.order_cap)
    backend = WickBackend(cfg, size)
    return (build_Q(phi, backend), build_R(phi, backend),
            build_Qhat(phi, backend), backend)
