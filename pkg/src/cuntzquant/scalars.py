"""Exact arithmetic for quantizer coefficients.

Every number produced by the basis and quantizer machinery lies in

    { sum of  c * sqrt(m) * pi**(h/2) : c in Q(i), m squarefree positive, h integer }

which is closed under addition, multiplication and conjugation, and under
inversion of single-term values.  Working in this tower lets identity checks
assert exact equality; floats only appear when a report needs a deviation
number.

Radical products never factor integers: for squarefree m1, m2 the product
sqrt(m1)*sqrt(m2) reduces through g = gcd(m1, m2) as g*sqrt((m1//g)*(m2//g)),
and the remaining radicand is squarefree because m1//g and m2//g are coprime.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class CFrac:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0) -> None:
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def coerce(value: "CFrac | RationalLike") -> "CFrac":
        if isinstance(value, CFrac):
            return value
        return CFrac(value)

    def __add__(self, other: "CFrac | RationalLike") -> "CFrac":
        o = CFrac.coerce(other)
        return CFrac(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: "CFrac | RationalLike") -> "CFrac":
        o = CFrac.coerce(other)
        return CFrac(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: "CFrac | RationalLike") -> "CFrac":
        return CFrac.coerce(other) - self

    def __neg__(self) -> "CFrac":
        return CFrac(-self.re, -self.im)

    def __mul__(self, other: "CFrac | RationalLike") -> "CFrac":
        o = CFrac.coerce(other)
        if not self.im and not o.im:
            return CFrac(self.re * o.re)
        return CFrac(self.re * o.re - self.im * o.im,
                     self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: "CFrac | RationalLike") -> "CFrac":
        o = CFrac.coerce(other)
        if not o.re and not o.im:
            raise ZeroDivisionError("division by zero CFrac")
        if not o.im:
            return CFrac(self.re / o.re, self.im / o.re)
        d = o.re * o.re + o.im * o.im
        return CFrac((self.re * o.re + self.im * o.im) / d,
                     (self.im * o.re - self.re * o.im) / d)

    def conjugate(self) -> "CFrac":
        return CFrac(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, CFrac):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self) -> str:
        return f"CFrac({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


CFRAC_ZERO = CFrac()
CFRAC_ONE = CFrac(1)
CFRAC_I = CFrac(0, 1)


def squarefree_decompose(m: int) -> tuple[int, int]:
    """Write m = s*s*r with r squarefree; return (s, r).  m must be positive."""
    if m <= 0:
        raise ValueError(f"radicand must be positive, got {m}")
    s = 1
    r = 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                r *= d
        d += 1 if d == 2 else 2
    return s, r * m


class Scalar:
    """Exact sum of terms c * sqrt(m) * pi**(h/2).

    Stored as a mapping (m, h) -> CFrac with m squarefree positive and h an
    integer; zero coefficients are dropped.  Half powers of pi arise from
    Hermite mass factors and cancel in every matrix identity, but individual
    pairings do carry them.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], CFrac] | None = None) -> None:
        self.terms: dict[tuple[int, int], CFrac] = terms if terms is not None else {}

    @staticmethod
    def zero() -> "Scalar":
        return Scalar()

    @staticmethod
    def one() -> "Scalar":
        return Scalar({(1, 0): CFRAC_ONE})

    @staticmethod
    def from_rational(value: RationalLike) -> "Scalar":
        c = CFrac(value)
        return Scalar({(1, 0): c} if c else {})

    @staticmethod
    def from_cfrac(value: CFrac) -> "Scalar":
        return Scalar({(1, 0): value} if value else {})

    @staticmethod
    def term(coeff: "CFrac | RationalLike", radicand: int = 1, pi_half: int = 0) -> "Scalar":
        """Single term coeff * sqrt(radicand) * pi**(pi_half/2)."""
        c = CFrac.coerce(coeff)
        if not c:
            return Scalar()
        s, r = squarefree_decompose(radicand)
        return Scalar({(r, pi_half): c * s})

    @staticmethod
    def sqrt_rational(value: RationalLike) -> "Scalar":
        """Exact square root of a nonnegative rational."""
        q = Fraction(value)
        if q < 0:
            raise ValueError(f"cannot take a real square root of {q}")
        if q == 0:
            return Scalar()
        s, r = squarefree_decompose(q.numerator * q.denominator)
        return Scalar({(r, 0): CFrac(Fraction(s, q.denominator))})

    @staticmethod
    def pi_power(pi_half: int, coeff: "CFrac | RationalLike" = 1) -> "Scalar":
        """coeff * pi**(pi_half/2)."""
        return Scalar.term(coeff, 1, pi_half)

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(key == (1, 0) for key in self.terms)

    def as_cfrac(self) -> CFrac:
        """The value as a complex rational; requires no radical or pi content."""
        if not self.terms:
            return CFRAC_ZERO
        if not self.is_rational():
            raise ValueError(f"not a rational value: {self}")
        return self.terms[(1, 0)]

    def __add__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = out.get(key)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return Scalar(out)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __neg__(self) -> "Scalar":
        return Scalar({key: -coeff for key, coeff in self.terms.items()})

    def __mul__(self, other: "Scalar | CFrac | RationalLike") -> "Scalar":
        if not isinstance(other, Scalar):
            c = CFrac.coerce(other)
            if not c:
                return Scalar()
            return Scalar({key: coeff * c for key, coeff in self.terms.items()})
        out: dict[tuple[int, int], CFrac] = {}
        for (m1, h1), c1 in self.terms.items():
            for (m2, h2), c2 in other.terms.items():
                g = math.gcd(m1, m2)
                key = ((m1 // g) * (m2 // g), h1 + h2)
                c = c1 * c2 * g
                acc = out.get(key)
                acc = c if acc is None else acc + c
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        return Scalar(out)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar({key: coeff.conjugate() for key, coeff in self.terms.items()})

    def inverse(self) -> "Scalar":
        """Exact inverse; defined for single-term values only."""
        if len(self.terms) != 1:
            raise ValueError(f"inverse needs a single-term value, got {self}")
        (m, h), c = next(iter(self.terms.items()))
        return Scalar({(m, -h): CFRAC_ONE / (c * m)})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return (self - Scalar.from_rational(other)).is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __complex__(self) -> complex:
        total = 0j
        for (m, h), c in self.terms.items():
            total += complex(c) * math.sqrt(m) * math.pi ** (h / 2)
        return total

    def __float__(self) -> float:
        z = complex(self)
        if abs(z.imag) > 1e-15 * max(1.0, abs(z.real)):
            raise ValueError(f"not a real value: {self}")
        return z.real

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self) -> str:
        return f"Scalar({self.terms!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (m, h), c in sorted(self.terms.items()):
            factors = []
            if c != CFRAC_ONE or (m == 1 and h == 0):
                factors.append(str(c))
            if m != 1:
                factors.append(f"sqrt({m})")
            if h:
                factors.append(f"pi^({Fraction(h, 2)})" if h % 2 else f"pi^{h // 2}")
            parts.append("*".join(factors))
        return " + ".join(parts)


SQRT_PI = Scalar.pi_power(1)
PI = Scalar.pi_power(2)
