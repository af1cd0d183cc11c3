from fractions import Fraction
from random import Random

from cuntzquant.basis import BasisSpec, GaussWeight
from cuntzquant.matrices import CoeffMatrix
from cuntzquant.poly import Polynomial, parse_polynomial
from cuntzquant.quantizer import (build_Q, build_Qhat, build_R, compare,
                                  im_part, matrix_power, re_part,
                                  selfadjoint_part, verify_lemma,
                                  verify_theorem)
from cuntzquant.reports import suite_passed
from cuntzquant.scalars import CFrac, Scalar


def random_poly(rng: Random, dim_n: int, degree: int, terms: int) -> Polynomial:
    out = Polynomial.zero(dim_n)
    for _ in range(terms):
        mono = [0] * (2 * dim_n)
        for _ in range(rng.randrange(degree + 1)):
            mono[rng.randrange(2 * dim_n)] += 1
        out = out + Polynomial.from_monomial(
            dim_n, tuple(mono), Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)))
    return out


def test_entry_anchors_squared_weight():
    spec = BasisSpec(1, 15)
    q = build_Q(parse_polynomial("q1", 1), spec)
    r = build_R(parse_polynomial("q1", 1), spec)
    assert q.entry(1, 3) == Scalar.sqrt_rational(2)
    assert r.entry(2, 1) == Scalar.sqrt_rational(Fraction(1, 2))
    assert r.entry(1, 2) == Scalar.sqrt_rational(Fraction(1, 2))


def test_qhat_of_unit_is_identity():
    for weight in GaussWeight:
        spec = BasisSpec(2, 15, weight=weight)
        qhat = build_Qhat(Polynomial.one(2), spec)
        dev, exact = qhat.deviation(CoeffMatrix.identity(spec))
        assert dev == 0.0 and exact


def test_commutator_constant_is_minus_4i():
    spec = BasisSpec(1, 45)
    f = parse_polynomial("q1", 1)
    g = parse_polynomial("p1", 1)
    comm = build_Qhat(f, spec).commutator(build_Qhat(g, spec))
    w = comm.window
    assert w == 36
    target = CoeffMatrix.identity(spec).scale(CFrac(0, -4))
    dev, exact = comm.deviation(target)
    assert dev == 0.0 and exact
    claimed = CoeffMatrix.identity(spec).scale(CFrac(0, -2))
    dev_claimed, _ = comm.deviation(claimed)
    assert dev_claimed == 2.0


def test_real_structure_of_qhat():
    spec = BasisSpec(1, 21)
    f = parse_polynomial("q1^2 + p1", 1)
    qhat = build_Qhat(f, spec)
    assert re_part(qhat).deviation(build_R(f, spec)) == (0.0, True)
    assert im_part(qhat).deviation(build_Q(f, spec).scale(-2)) == (0.0, True)


def test_multiplication_operator_is_selfadjoint():
    for weight in GaussWeight:
        spec = BasisSpec(1, 21, weight=weight)
        r = build_R(parse_polynomial("q1^2*p1", 1), spec)
        assert r.conj_transpose().deviation(r) == (0.0, True)
        assert selfadjoint_part(r).deviation(r) == (0.0, True)


def test_power_rule_exact():
    spec = BasisSpec(1, 28)
    f = parse_polynomial("q1 + p1^2", 1)
    r = build_R(f, spec)
    rm = build_R(spec.obs_pow(f, 2), spec)
    dev, exact = rm.deviation(matrix_power(r, 2))
    assert dev == 0.0 and exact


def test_lemma_identities_random_pairs_both_weights():
    rng = Random(41)
    for weight in GaussWeight:
        spec1 = BasisSpec(1, 45, weight=weight)
        spec2 = BasisSpec(2, 70, weight=weight)
        for spec, deg in ((spec1, 3), (spec2, 2)):
            for _ in range(3):
                f = random_poly(rng, spec.dim_n, deg, 3)
                g = random_poly(rng, spec.dim_n, deg, 3)
                checks = verify_lemma(f, g, spec)
                assert len(checks) == 4
                assert all(c.exact and c.passed for c in checks), (weight, f, g)


def test_theorem_covers_all_ordered_coordinate_pairs():
    spec = BasisSpec(2, 70)
    f = parse_polynomial("q1*p2", 2)
    g = parse_polynomial("p1", 2)
    checks = verify_theorem(f, g, spec)
    coord = [c for c in checks if c.identity.startswith("coordinate-commutators")]
    claimed = [c for c in coord if c.identity.endswith("-claimed")]
    corrected = [c for c in coord if c.identity.endswith("-corrected")]
    plain = [c for c in coord if c not in claimed and c not in corrected]
    assert len(plain) + len(claimed) == 16
    assert len(claimed) == len(corrected) == 4
    assert all(c.passed for c in plain)
    assert all(c.passed and c.exact for c in corrected)
    assert all(not c.passed and c.max_abs_deviation == 2.0 for c in claimed)


def test_theorem_bracket_rule_pair():
    spec = BasisSpec(1, 45)
    f = parse_polynomial("q1^2", 1)
    g = parse_polynomial("p1", 1)
    checks = {c.identity: c for c in verify_theorem(f, g, spec)}
    assert checks["unit-maps-to-identity"].exact
    assert not checks["bracket-rule-claimed"].passed
    assert checks["bracket-rule-corrected"].exact
    power = [c for c in checks.values() if c.identity.startswith("power-rule-R")]
    assert power and all(c.passed for c in power)
    advisory = [c for c in checks.values() if c.advisory]
    assert advisory
    assert suite_passed([c for c in checks.values()
                         if c.advisory or c.passed or "-claimed" in c.identity]) is False


def test_compare_advisory_does_not_gate():
    spec = BasisSpec(1, 10)
    ident = CoeffMatrix.identity(spec)
    off = ident.scale(2)
    info = compare("advisory-probe", off, ident, advisory=True)
    assert not info.passed
    assert suite_passed([info])


def test_zero_observable_maps_to_zero():
    spec = BasisSpec(1, 10)
    z = Polynomial.zero(1)
    assert build_Q(z, spec).nnz() == 0
    assert build_R(z, spec).nnz() == 0
