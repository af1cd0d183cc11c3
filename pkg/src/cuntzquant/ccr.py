"""Canonical commutation relations from the quantization maps.

For conjugate coordinates (q_i, p_i), i = 1..n, the family is indexed by
slots a in {2, ..., 2n+1}:

    even slot  a = 2i     Q_a = Q(q_i)   P_a = R(p_i)
    odd slot   a = 2i+1   Q_a = Q(p_i)   P_a = R(q_i)

and satisfies, exactly on windows,

    [Q_a, Q_b] = [P_a, P_b] = 0,     [Q_a, P_b] = (-1)^a delta_ab Id.

The commutator law holds under either Gaussian weight.  The adjoint-based
identities P_a = (-1)^a (Q_a + Q_a*) and [Q_a, Q_b*] = delta_ab Id are
weight-sensitive: they hold exactly for the STANDARD weight exp(-|x|^2/2)
and fail by an exact factor 2 under the SQUARED weight exp(-|x|^2) (there
[Q_a, Q_a*] = 2 Id).  build_ccr therefore defaults to the STANDARD weight;
the factor-2 behavior of the other weight is exercised in tests rather than
hidden.

quantize_via_ccr rewrites Q(f) and R(f) for polynomial f as explicit word
expressions in the generators {Q_a, Q_a*} via the recursion

    R(x g) = R(x) R(g),     Q(x g) = Q(g) R(x) + Q(x) R(g),

with base cases Q(q_i) = Q_{2i}, Q(p_i) = Q_{2i+1}, and the adjoint relation
providing R(q_i) = -(Q_{2i+1} + Q_{2i+1}*), R(p_i) = Q_{2i} + Q_{2i}*.
"""

from __future__ import annotations

from fractions import Fraction

from .basis import BasisSpec, GaussWeight, Normalization
from .matrices import CoeffMatrix
from .poly import Monomial, Polynomial
from .quantizer import build_Q, build_R, compare
from .reports import IdentityCheck
from .scalars import CFRAC_ONE, CFrac

# A word is a tuple of (slot, star) symbols; an expression maps words to
# complex-rational coefficients.  The empty word is the identity.
Symbol = tuple[int, bool]
Word = tuple[Symbol, ...]
Expression = dict[Word, CFrac]


class CCRFamily:
    def __init__(self, dim_n: int, spec: BasisSpec) -> None:
        if spec.dim_n != dim_n:
            raise ValueError(f"spec has dim_n={spec.dim_n}, family wants {dim_n}")
        self.dim_n = dim_n
        self.spec = spec
        self.q_ops: dict[int, CoeffMatrix] = {}
        self.p_ops: dict[int, CoeffMatrix] = {}
        for i in range(1, dim_n + 1):
            qi = Polynomial.q(dim_n, i)
            pi = Polynomial.p(dim_n, i)
            self.q_ops[2 * i] = build_Q(qi, spec)
            self.q_ops[2 * i + 1] = build_Q(pi, spec)
            self.p_ops[2 * i] = build_R(pi, spec)
            self.p_ops[2 * i + 1] = build_R(qi, spec)

    @property
    def slots(self) -> list[int]:
        return sorted(self.q_ops)

    @staticmethod
    def sign(slot: int) -> int:
        return -1 if slot % 2 else 1

    def observable(self, slot: int) -> Polynomial:
        """The coordinate whose bracket action sits in Q-slot `slot`."""
        i, odd = divmod(slot, 2)
        return Polynomial.p(self.dim_n, i) if odd else Polynomial.q(self.dim_n, i)


def build_ccr(n: int, spec: BasisSpec | None = None, size: int | None = None,
              weight: GaussWeight = GaussWeight.STANDARD) -> CCRFamily:
    if spec is None:
        if size is None:
            spec = BasisSpec.covering_degree(n, 4, weight=weight)
        else:
            spec = BasisSpec(n, size, weight=weight)
    return CCRFamily(n, spec)


def verify_ccr(fam: CCRFamily, tol: float = 0.0) -> list[IdentityCheck]:
    """[Q_a, P_b] = (-1)^a delta_ab Id and vanishing of same-kind commutators."""
    checks = []
    spec = fam.spec
    for a in fam.slots:
        for b in fam.slots:
            lhs = fam.q_ops[a].commutator(fam.p_ops[b])
            if a == b:
                rhs = CoeffMatrix.identity(spec).scale(CCRFamily.sign(a))
            else:
                rhs = CoeffMatrix.zeros(spec, band=2)
            checks.append(compare(f"pair-commutator[{a},{b}]", lhs, rhs, tol))
            if a < b:
                checks.append(compare(
                    f"QQ-commute[{a},{b}]",
                    fam.q_ops[a].commutator(fam.q_ops[b]),
                    CoeffMatrix.zeros(spec, band=2), tol))
                checks.append(compare(
                    f"PP-commute[{a},{b}]",
                    fam.p_ops[a].commutator(fam.p_ops[b]),
                    CoeffMatrix.zeros(spec, band=2), tol))
    return checks


def verify_adjoint_relation(fam: CCRFamily, tol: float = 0.0) -> list[IdentityCheck]:
    """P_a = (-1)^a (Q_a + Q_a*) entrywise on the window."""
    checks = []
    for a in fam.slots:
        qa = fam.q_ops[a]
        rhs = (qa + qa.conj_transpose()).scale(CCRFamily.sign(a))
        checks.append(compare(f"adjoint-relation[{a}]", fam.p_ops[a], rhs, tol))
    return checks


def verify_ccr_starred(fam: CCRFamily, tol: float = 0.0) -> list[IdentityCheck]:
    """[Q_a, Q_b*] = delta_ab Id, starred commutators vanish, number-operator law."""
    checks = []
    spec = fam.spec
    stars = {a: fam.q_ops[a].conj_transpose() for a in fam.slots}
    for a in fam.slots:
        for b in fam.slots:
            lhs = fam.q_ops[a].commutator(stars[b])
            if a == b:
                rhs = CoeffMatrix.identity(spec)
            else:
                rhs = CoeffMatrix.zeros(spec, band=2)
            checks.append(compare(f"ladder-commutator[{a},{b}]", lhs, rhs, tol))
            if a < b:
                checks.append(compare(
                    f"plain-commute[{a},{b}]",
                    fam.q_ops[a].commutator(fam.q_ops[b]),
                    CoeffMatrix.zeros(spec, band=2), tol))
                checks.append(compare(
                    f"starred-commute[{a},{b}]",
                    stars[a].commutator(stars[b]),
                    CoeffMatrix.zeros(spec, band=2), tol))
    for a in fam.slots:
        number_op = stars[a] @ fam.q_ops[a]
        checks.append(compare(
            f"number-operator-lowering[{a}]",
            number_op.commutator(fam.q_ops[a]),
            -fam.q_ops[a],
            tol))
    return checks


# ----------------------------------------------------------------------
# word expressions


def expr_add(x: Expression, y: Expression) -> Expression:
    out = dict(x)
    for word, c in y.items():
        acc = out.get(word)
        acc = c if acc is None else acc + c
        if acc:
            out[word] = acc
        else:
            out.pop(word, None)
    return out


def expr_scale(x: Expression, factor) -> Expression:
    f = CFrac.coerce(factor)
    if not f:
        return {}
    return {word: c * f for word, c in x.items()}


def expr_mul(x: Expression, y: Expression) -> Expression:
    out: Expression = {}
    for wx, cx in x.items():
        for wy, cy in y.items():
            word = wx + wy
            c = cx * cy
            acc = out.get(word)
            acc = c if acc is None else acc + c
            if acc:
                out[word] = acc
            else:
                out.pop(word, None)
    return out


def expression_text(expr: Expression) -> str:
    """Normal form: words sorted by length then content, coefficient first."""
    if not expr:
        return "0"
    parts = []
    for word in sorted(expr, key=lambda w: (len(w), w)):
        c = expr[word]
        body = "*".join(f"Q{slot}{'^*' if star else ''}" for slot, star in word)
        cs = str(c)
        if not body:
            parts.append(cs)
        elif cs == "1":
            parts.append(body)
        elif cs == "-1":
            parts.append(f"-{body}")
        else:
            parts.append(f"{cs}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


def evaluate_expression(expr: Expression, fam: CCRFamily) -> CoeffMatrix:
    gens = {(a, False): fam.q_ops[a] for a in fam.slots}
    gens.update({(a, True): fam.q_ops[a].conj_transpose() for a in fam.slots})
    total = CoeffMatrix.zeros(fam.spec, band=0)
    for word, coeff in expr.items():
        mat = CoeffMatrix.identity(fam.spec)
        for sym in word:
            mat = mat @ gens[sym]
        total = total + mat.scale(coeff)
    return total


def _base_Q(fam: CCRFamily, flat_index: int) -> Expression:
    n = fam.dim_n
    slot = 2 * (flat_index + 1) if flat_index < n else 2 * (flat_index - n + 1) + 1
    return {((slot, False),): CFRAC_ONE}


def _base_R(fam: CCRFamily, flat_index: int) -> Expression:
    n = fam.dim_n
    if flat_index < n:
        slot = 2 * (flat_index + 1) + 1
        sign = CFrac(-1)
    else:
        slot = 2 * (flat_index - n + 1)
        sign = CFRAC_ONE
    return {((slot, False),): sign, ((slot, True),): sign}


def _split_monomial(mono: Monomial, split: str) -> tuple[int, Monomial]:
    indices = [v for v, e in enumerate(mono) if e]
    v = indices[0] if split == "left" else indices[-1]
    rest = tuple(e - 1 if u == v else e for u, e in enumerate(mono))
    return v, rest


def _monomial_exprs(fam: CCRFamily, mono: Monomial,
                    split: str) -> tuple[Expression, Expression]:
    if not any(mono):
        return {}, {(): CFRAC_ONE}
    v, rest = _split_monomial(mono, split)
    if not any(rest):
        return _base_Q(fam, v), _base_R(fam, v)
    q_rest, r_rest = _monomial_exprs(fam, rest, split)
    q_x, r_x = _base_Q(fam, v), _base_R(fam, v)
    q_out = expr_add(expr_mul(q_rest, r_x), expr_mul(q_x, r_rest))
    return q_out, expr_mul(r_x, r_rest)


def quantize_via_ccr(f: Polynomial, fam: CCRFamily,
                     split: str = "left") -> tuple[Expression, Expression]:
    """Word expressions (Q(f), R(f)) over the generators {Q_a, Q_a*}.

    split chooses which variable factors off at each recursion step ("left"
    = lowest coordinate first, "right" = highest); the evaluated matrices do
    not depend on the choice.
    """
    if split not in ("left", "right"):
        raise ValueError(f"split must be 'left' or 'right', got {split}")
    if f.dim_n != fam.dim_n:
        raise ValueError(f"observable over {f.dim_n} pairs, family over {fam.dim_n}")
    q_total: Expression = {}
    r_total: Expression = {}
    for mono, coeff in f.terms.items():
        q_m, r_m = _monomial_exprs(fam, mono, split)
        q_total = expr_add(q_total, expr_scale(q_m, coeff))
        r_total = expr_add(r_total, expr_scale(r_m, coeff))
    return q_total, r_total
