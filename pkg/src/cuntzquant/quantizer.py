"""Quantization maps from observables to windowed coefficient matrices.

Three maps over any graded basis backend:

    Q(h)  entry (i, j) = expansion coefficient of the bracket action {h, e_j}
    R(h)  entry (i, j) = expansion coefficient of the product h * e_j
    Qhat  R(h) - 2i Q(h)

Verification suites check the bracket and product compatibilities of Q and R,
unit preservation of Qhat, the asserted commutator rule for Qhat in both its
claimed form [Qhat(f), Qhat(g)] = -2i Qhat({f,g}) and the corrected form
-2i (Qhat + R)({f,g}), the induced conjugate-pair commutators, and the power
rule R(f^m) = R(f)^m.

The claimed commutator rule is provably false whenever {f, g} is nonzero:
expanding with Qhat = R - 2iQ and the four compatibility identities gives

    [Qhat(f), Qhat(g)] = -4i R({f,g}) - 4 Q({f,g}) = -2i (Qhat + R)({f,g}),

which exceeds the claimed right side by exactly -2i R({f,g}).  On conjugate
coordinate pairs the discrepancy is the constant: -4i instead of -2i.  The
suites compute both forms and report each honestly; no weight or scaling
choice can reconcile them, since the Q and R parts of the defect scale
differently.
"""

from __future__ import annotations

from fractions import Fraction

from .matrices import CoeffMatrix
from .reports import IdentityCheck
from .scalars import CFrac

NEG_2I = CFrac(0, -2)


def build_Q(h, backend) -> CoeffMatrix:
    """Matrix of the bracket action f -> {h, f} on the backend's basis."""
    columns = {j: backend.q_column_core(h, j) for j in range(1, backend.size + 1)}
    return CoeffMatrix.from_column_cores(backend, columns, backend.band_bound(h))


def build_R(h, backend) -> CoeffMatrix:
    """Matrix of multiplication by h on the backend's basis."""
    columns = {j: backend.r_column_core(h, j) for j in range(1, backend.size + 1)}
    return CoeffMatrix.from_column_cores(backend, columns, backend.band_bound(h))


def build_Qhat(h, backend) -> CoeffMatrix:
    return build_R(h, backend) + build_Q(h, backend).scale(NEG_2I)


def im_part(mat: CoeffMatrix) -> CoeffMatrix:
    """Imaginary part of the cores, as a real-cored matrix."""
    core = {}
    for key, c in mat.core.items():
        if c.im:
            core[key] = CFrac(c.im)
    return CoeffMatrix(mat.backend, core, mat.band, mat.window)


def re_part(mat: CoeffMatrix) -> CoeffMatrix:
    core = {}
    for key, c in mat.core.items():
        if c.re:
            core[key] = CFrac(c.re)
    return CoeffMatrix(mat.backend, core, mat.band, mat.window)


def selfadjoint_part(mat: CoeffMatrix) -> CoeffMatrix:
    """(T + T*)/2 with the adjoint taken in the backend's inner product."""
    return (mat + mat.conj_transpose()).scale(Fraction(1, 2))


def matrix_power(mat: CoeffMatrix, m: int) -> CoeffMatrix:
    if m < 1:
        raise ValueError("matrix_power needs a positive exponent")
    out = mat
    for _ in range(m - 1):
        out = out @ mat
    return out


def compare(identity: str, lhs: CoeffMatrix, rhs: CoeffMatrix,
            tol: float = 0.0, advisory: bool = False) -> IdentityCheck:
    dev, exact = lhs.deviation(rhs)
    window = lhs.common_window(rhs)
    return IdentityCheck(
        identity=identity,
        n=lhs.backend.n,
        N=lhs.backend.size,
        window=window,
        max_abs_deviation=dev,
        exact=exact,
        passed=exact or dev <= tol,
        advisory=advisory,
    )


class _Builder:
    """Per-suite cache so each observable is quantized once."""

    def __init__(self, backend) -> None:
        self.backend = backend
        self._q: dict = {}
        self._r: dict = {}

    def Q(self, h) -> CoeffMatrix:
        mat = self._q.get(h)
        if mat is None:
            mat = build_Q(h, self.backend)
            self._q[h] = mat
        return mat

    def R(self, h) -> CoeffMatrix:
        mat = self._r.get(h)
        if mat is None:
            mat = build_R(h, self.backend)
            self._r[h] = mat
        return mat

    def Qhat(self, h) -> CoeffMatrix:
        return self.R(h) + self.Q(h).scale(NEG_2I)


def verify_lemma(f, g, backend, tol: float = 0.0) -> list[IdentityCheck]:
    """The four compatibility identities of Q and R, on the common window."""
    b = _Builder(backend)
    br = backend.obs_bracket(f, g)
    prod = backend.obs_mul(f, g)
    return [
        compare("commutator-QQ-vs-bracket",
                b.Q(f).commutator(b.Q(g)), b.Q(br), tol),
        compare("commutator-QR-vs-bracket",
                b.Q(f).commutator(b.R(g)), b.R(br), tol),
        compare("leibniz-splitting",
                (b.Q(g) @ b.R(f)) + (b.Q(f) @ b.R(g)), b.Q(prod), tol),
        compare("R-multiplicative",
                b.R(f) @ b.R(g), b.R(prod), tol),
    ]


def _bracket_rule_pair(name: str, b: _Builder, x, y, tol: float) -> list[IdentityCheck]:
    lhs = b.Qhat(x).commutator(b.Qhat(y))
    br = b.backend.obs_bracket(x, y)
    claimed = b.Qhat(br).scale(NEG_2I)
    corrected = (b.Qhat(br) + b.R(br)).scale(NEG_2I)
    return [
        compare(f"{name}-claimed", lhs, claimed, tol),
        compare(f"{name}-corrected", lhs, corrected, tol),
    ]


def verify_theorem(f, g, backend, phi_degree: int = 2,
                   tol: float = 0.0) -> list[IdentityCheck]:
    """Unit preservation, commutator rule, conjugate-pair commutators, power rule.

    The "-claimed" checks carry the asserted -2i form and fail whenever the
    relevant bracket is nonzero; the "-corrected" checks carry the derived
    -2i (Qhat + R) form and pass exactly.  Both are reported.
    """
    if phi_degree < 1:
        raise ValueError("phi_degree must be a positive integer")
    b = _Builder(backend)
    checks = [compare("unit-maps-to-identity",
                      b.Qhat(backend.obs_one()), CoeffMatrix.identity(backend), tol)]
    checks.extend(_bracket_rule_pair("bracket-rule", b, f, g, tol))

    flat = []
    for label, q_obs, p_obs in backend.coordinates():
        flat.append((f"q{label}", q_obs))
        flat.append((f"p{label}", p_obs))
    for la, xa in flat:
        for lb, xb in flat:
            name = f"coordinate-commutators[{la},{lb}]"
            if backend.obs_is_zero(backend.obs_bracket(xa, xb)):
                checks.append(compare(
                    name, b.Qhat(xa).commutator(b.Qhat(xb)),
                    CoeffMatrix.zeros(backend, band=2), tol))
            else:
                checks.extend(_bracket_rule_pair(name, b, xa, xb, tol))

    m = phi_degree
    fm = backend.obs_pow(f, m)
    checks.append(compare(f"power-rule-R[m={m}]",
                          b.R(fm), matrix_power(b.R(f), m), tol))
    checks.append(compare(
        f"power-rule-selfadjoint-part[m={m}]",
        selfadjoint_part(b.Qhat(fm)),
        matrix_power(selfadjoint_part(b.Qhat(f)), m),
        tol, advisory=True))
    return checks
