"""Polynomial observables on R^{2n} with exact coefficients.

Coordinates are ordered (q1, ..., qn, p1, ..., pn); a monomial is the tuple of
its exponents in that order.  Coefficients are Fractions by default, but any
ring element supporting +, *, unary - and truth testing works (the basis layer
uses Scalar coefficients for normalized eigenfunctions).

The canonical Poisson bracket is

    {f, g} = sum_k  df/dq_k * dg/dp_k - df/dp_k * dg/dq_k.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

Monomial = tuple[int, ...]


class DimensionMismatch(ValueError):
    """Raised when polynomials over different coordinate counts are combined."""


class PolyParseError(ValueError):
    """Raised by parse_polynomial on malformed input."""


class Polynomial:
    __slots__ = ("dim_n", "terms")

    def __init__(self, dim_n: int, terms: dict[Monomial, object] | None = None) -> None:
        if dim_n < 1:
            raise ValueError(f"dim_n must be at least 1, got {dim_n}")
        self.dim_n = dim_n
        self.terms: dict[Monomial, object] = terms if terms is not None else {}

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zero(dim_n: int) -> "Polynomial":
        return Polynomial(dim_n)

    @staticmethod
    def constant(dim_n: int, value) -> "Polynomial":
        value = Fraction(value) if isinstance(value, int) else value
        mono = (0,) * (2 * dim_n)
        return Polynomial(dim_n, {mono: value} if value else {})

    @staticmethod
    def one(dim_n: int) -> "Polynomial":
        return Polynomial.constant(dim_n, Fraction(1))

    @staticmethod
    def coordinate(dim_n: int, index: int) -> "Polynomial":
        """Coordinate polynomial for flat index 0..2n-1 (q block then p block)."""
        if not 0 <= index < 2 * dim_n:
            raise ValueError(f"coordinate index {index} out of range for dim_n={dim_n}")
        mono = tuple(1 if i == index else 0 for i in range(2 * dim_n))
        return Polynomial(dim_n, {mono: Fraction(1)})

    @staticmethod
    def q(dim_n: int, k: int) -> "Polynomial":
        """q_k for 1 <= k <= n."""
        if not 1 <= k <= dim_n:
            raise ValueError(f"q index {k} out of range for dim_n={dim_n}")
        return Polynomial.coordinate(dim_n, k - 1)

    @staticmethod
    def p(dim_n: int, k: int) -> "Polynomial":
        """p_k for 1 <= k <= n."""
        if not 1 <= k <= dim_n:
            raise ValueError(f"p index {k} out of range for dim_n={dim_n}")
        return Polynomial.coordinate(dim_n, dim_n + k - 1)

    @staticmethod
    def from_monomial(dim_n: int, mono: Monomial, coeff=Fraction(1)) -> "Polynomial":
        if len(mono) != 2 * dim_n:
            raise DimensionMismatch(f"monomial length {len(mono)} != 2*{dim_n}")
        coeff = Fraction(coeff) if isinstance(coeff, int) else coeff
        return Polynomial(dim_n, {tuple(mono): coeff} if coeff else {})

    # ------------------------------------------------------------------
    # ring operations

    def _check(self, other: "Polynomial") -> None:
        if self.dim_n != other.dim_n:
            raise DimensionMismatch(
                f"cannot combine polynomials over {self.dim_n} and {other.dim_n} pairs")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return Polynomial(self.dim_n, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.dim_n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                acc = out.get(mono)
                acc = c if acc is None else acc + c
                if acc:
                    out[mono] = acc
                else:
                    out.pop(mono, None)
        return Polynomial(self.dim_n, out)

    def scale(self, factor) -> "Polynomial":
        factor = Fraction(factor) if isinstance(factor, int) else factor
        if not factor:
            return Polynomial(self.dim_n)
        return Polynomial(self.dim_n, {m: factor * c for m, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.one(self.dim_n)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def diff(self, index: int) -> "Polynomial":
        """Partial derivative with respect to flat coordinate index 0..2n-1."""
        out: dict[Monomial, object] = {}
        for mono, coeff in self.terms.items():
            e = mono[index]
            if e == 0:
                continue
            lowered = mono[:index] + (e - 1,) + mono[index + 1:]
            c = coeff * e
            acc = out.get(lowered)
            acc = c if acc is None else acc + c
            if acc:
                out[lowered] = acc
            else:
                out.pop(lowered, None)
        return Polynomial(self.dim_n, out)

    # ------------------------------------------------------------------
    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), Fraction(0))

    def evaluate(self, point: Sequence):
        """Evaluate at a point given as 2n values (Fractions or floats)."""
        if len(point) != 2 * self.dim_n:
            raise DimensionMismatch(f"point has {len(point)} coordinates, need {2 * self.dim_n}")
        total = None
        for mono, coeff in self.terms.items():
            value = coeff
            for x, e in zip(point, mono):
                for _ in range(e):
                    value = value * x
            total = value if total is None else total + value
        return Fraction(0) if total is None else total

    def map_coefficients(self, fn: Callable) -> "Polynomial":
        out = {}
        for mono, coeff in self.terms.items():
            c = fn(coeff)
            if c:
                out[mono] = c
        return Polynomial(self.dim_n, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim_n == other.dim_n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim_n, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (sum(m), m)):
            coeff = self.terms[mono]
            names = []
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                name = f"q{i + 1}" if i < self.dim_n else f"p{i - self.dim_n + 1}"
                names.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(names)
            cs = str(coeff)
            if body and cs == "1":
                parts.append(body)
            elif body and cs == "-1":
                parts.append(f"-{body}")
            elif body:
                parts.append(f"{cs}*{body}" if "+" not in cs[1:] and " " not in cs else f"({cs})*{body}")
            else:
                parts.append(cs)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self.dim_n}, {self.terms!r})"


def poisson_bracket(f: Polynomial, g: Polynomial) -> Polynomial:
    """Canonical bracket {f, g} = sum_k df/dq_k dg/dp_k - df/dp_k dg/dq_k."""
    if f.dim_n != g.dim_n:
        raise DimensionMismatch(
            f"cannot bracket polynomials over {f.dim_n} and {g.dim_n} pairs")
    n = f.dim_n
    out = Polynomial.zero(n)
    for k in range(n):
        out = out + f.diff(k) * g.diff(n + k) - f.diff(n + k) * g.diff(k)
    return out


# ----------------------------------------------------------------------
# parsing

_WHITESPACE = " \t\r\n"


class _Tokens:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in _WHITESPACE:
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message: str) -> PolyParseError:
        return PolyParseError(f"{message} at position {self.pos} in {self.text!r}")

    def take_number(self) -> Fraction:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] == "."):
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a number")
        head = self.text[start:self.pos]
        try:
            value = Fraction(head)
        except ValueError:
            raise self.error(f"bad number {head!r}") from None
        if self.peek() == "/":
            self.pos += 1
            self._skip()
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if dstart == self.pos:
                raise self.error("expected a denominator")
            value /= int(self.text[dstart:self.pos])
        return value

    def take_int(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])


def parse_polynomial(text: str, dim_n: int) -> Polynomial:
    """Parse expressions like "q1^2*p1 - 3/2*p2" into a Polynomial.

    Grammar: sums and differences of terms; a term is a '*'-separated product
    of factors; a factor is a coordinate (q<k> or p<k>), a rational number
    (integer, a/b, or decimal), or a parenthesized expression, optionally
    followed by ^<integer exponent>.
    """
    toks = _Tokens(text)

    def parse_expr() -> Polynomial:
        sign = 1
        ch = toks.peek()
        if ch in ("+", "-"):
            toks.pos += 1
            sign = -1 if ch == "-" else 1
        acc = parse_term()
        if sign < 0:
            acc = -acc
        while True:
            ch = toks.peek()
            if ch == "+":
                toks.pos += 1
                acc = acc + parse_term()
            elif ch == "-":
                toks.pos += 1
                acc = acc - parse_term()
            else:
                return acc

    def parse_term() -> Polynomial:
        acc = parse_factor()
        while toks.peek() == "*":
            toks.pos += 1
            acc = acc * parse_factor()
        return acc

    def parse_factor() -> Polynomial:
        base = parse_atom()
        if toks.peek() == "^":
            toks.pos += 1
            return base ** toks.take_int()
        return base

    def parse_atom() -> Polynomial:
        ch = toks.peek()
        if ch == "(":
            toks.pos += 1
            inner = parse_expr()
            if toks.peek() != ")":
                raise toks.error("expected ')'")
            toks.pos += 1
            return inner
        if ch == "-":
            toks.pos += 1
            return -parse_factor()
        if ch in ("q", "p"):
            toks.pos += 1
            k = toks.take_int()
            if not 1 <= k <= dim_n:
                raise toks.error(f"coordinate {ch}{k} out of range for n={dim_n}")
            return Polynomial.q(dim_n, k) if ch == "q" else Polynomial.p(dim_n, k)
        if ch.isdigit() or ch == ".":
            return Polynomial.constant(dim_n, toks.take_number())
        raise toks.error(f"unexpected character {ch!r}" if ch else "unexpected end of input")

    result = parse_expr()
    if toks.peek():
        raise toks.error(f"unexpected character {toks.peek()!r}")
    return result
