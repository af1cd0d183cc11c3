import math
from fractions import Fraction
from random import Random

import pytest

from cuntzquant.matrices import CoeffMatrix
from cuntzquant.scalars import CFrac
from cuntzquant.quantizer import build_Qhat, build_R, compare, verify_lemma
from cuntzquant.whitenoise import (ChaosParseError, ChaosPoly, OrderOverflow,
                                   WhiteNoiseConfig, WickBackend,
                                   coordinate_derivative, directional_derivative,
                                   duality, estimate_check, hida_norm, parse_chaos,
                                   pointwise_product, s_transform, wick_product,
                                   wn_bracket, wn_quantize)


def cfg2(cap: int = 3, **kw) -> WhiteNoiseConfig:
    return WhiteNoiseConfig(modes=2, order_cap=cap, **kw)


def test_config_defaults_and_accessors():
    cfg = cfg2()
    assert cfg.lam == (Fraction(1), Fraction(1))
    assert cfg.a_eigenvalues == (Fraction(4), Fraction(6))
    assert cfg.coords == 4 and cfg.hard_cap == 6
    assert cfg.eigenvalue_of_coord(0) == 4
    assert cfg.eigenvalue_of_coord(3) == 6
    assert cfg.smoothing_inverse_norm() == 0.25
    hs = math.sqrt(1 / 16 + 1 / 36)
    assert cfg.smoothing_inverse_hs() == pytest.approx(hs)


def test_config_validation():
    with pytest.raises(ValueError):
        WhiteNoiseConfig(modes=0, order_cap=3)
    with pytest.raises(ValueError):
        WhiteNoiseConfig(modes=1, order_cap=0)
    with pytest.raises(ValueError):
        cfg2(lam=(Fraction(1),))
    with pytest.raises(ValueError):
        cfg2(a_eigenvalues=(Fraction(1),))
    with pytest.raises(ValueError):
        cfg2(a_eigenvalues=(Fraction(0), Fraction(1)))
    with pytest.raises(ValueError):
        cfg2(a_eigenvalues=(Fraction(6), Fraction(4)))


def test_poly_arithmetic_and_text():
    cfg = cfg2()
    q1 = ChaosPoly.first_chaos(cfg, "q", 1)
    p2 = ChaosPoly.first_chaos(cfg, "p", 2)
    assert str(q1) == ":q1:"
    assert str(q1 + p2.scale(-2)) == "-2*:p2: + :q1:"
    assert str(ChaosPoly.zero(cfg)) == "0"
    assert (q1 - q1).is_zero()
    assert (-q1).coefficient((1, 0, 0, 0)) == -1
    assert q1.degree() == 1
    assert ChaosPoly.constant(cfg, 5).degree() == 0
    assert q1 == ChaosPoly.wick_monomial(cfg, (1, 0, 0, 0))
    assert hash(q1) == hash(ChaosPoly.wick_monomial(cfg, (1, 0, 0, 0)))
    with pytest.raises(ValueError):
        ChaosPoly.first_chaos(cfg, "x", 1)
    with pytest.raises(ValueError):
        ChaosPoly.first_chaos(cfg, "q", 3)


def test_hard_cap_guards_construction():
    cfg = cfg2(cap=2)
    with pytest.raises(OrderOverflow) as info:
        ChaosPoly.wick_monomial(cfg, (5, 0, 0, 0))
    assert info.value.required_cap == 5
    assert "exceeds the cap 4" in str(info.value)


def test_pointwise_product_linearization():
    cfg = cfg2()
    q1 = ChaosPoly.first_chaos(cfg, "q", 1)
    sq = ChaosPoly.wick_monomial(cfg, (2, 0, 0, 0))
    assert pointwise_product(q1, q1) == sq + ChaosPoly.constant(cfg, 1)
    cube = ChaosPoly.wick_monomial(cfg, (3, 0, 0, 0))
    assert pointwise_product(sq, q1) == cube + q1.scale(2)
    # disjoint coordinates multiply freely
    p2 = ChaosPoly.first_chaos(cfg, "p", 2)
    assert pointwise_product(q1, p2) == ChaosPoly.wick_monomial(cfg, (1, 0, 0, 1))


def test_pointwise_product_respects_hard_cap():
    cfg = cfg2(cap=2)
    sq = ChaosPoly.wick_monomial(cfg, (2, 0, 0, 0))
    quart = pointwise_product(sq, sq)
    assert quart.degree() == 4
    with pytest.raises(OrderOverflow):
        pointwise_product(quart, sq)


def test_wick_product_is_exponent_addition():
    cfg = cfg2()
    q1 = ChaosPoly.first_chaos(cfg, "q", 1)
    assert wick_product(q1, q1) == ChaosPoly.wick_monomial(cfg, (2, 0, 0, 0))
    f = parse_chaos(":q1 p1: + 2", cfg)
    g = parse_chaos(":q1: - :p2:", cfg)
    assert s_transform(wick_product(f, g)) == s_transform(f) * s_transform(g)


def test_derivatives():
    cfg = cfg2()
    sq = ChaosPoly.wick_monomial(cfg, (2, 0, 0, 0))
    q1 = ChaosPoly.first_chaos(cfg, "q", 1)
    assert coordinate_derivative(sq, 0) == q1.scale(2)
    assert coordinate_derivative(sq, 1).is_zero()
    mixed = ChaosPoly.wick_monomial(cfg, (1, 0, 0, 2))
    got = directional_derivative(mixed, (1, 0, 0, Fraction(1, 2)))
    want = (ChaosPoly.wick_monomial(cfg, (0, 0, 0, 2))
            + ChaosPoly.wick_monomial(cfg, (1, 0, 0, 1)))
    assert got == want
    with pytest.raises(ValueError):
        directional_derivative(mixed, (1, 0))


def test_bracket_canonical_pairs_and_weights():
    lam = (Fraction(1), Fraction(3, 2))
    cfg = cfg2(lam=lam)
    for k in (1, 2):
        qk = ChaosPoly.first_chaos(cfg, "q", k)
        pk = ChaosPoly.first_chaos(cfg, "p", k)
        assert wn_bracket(qk, pk) == ChaosPoly.constant(cfg, lam[k - 1])
        assert wn_bracket(pk, qk) == ChaosPoly.constant(cfg, -lam[k - 1])
        assert wn_bracket(qk, qk).is_zero()
    q1 = ChaosPoly.first_chaos(cfg, "q", 1)
    p2 = ChaosPoly.first_chaos(cfg, "p", 2)
    assert wn_bracket(q1, p2).is_zero()


def test_bracket_skips_zero_weights():
    cfg = cfg2(lam=(Fraction(0), Fraction(1)))
    q1 = ChaosPoly.first_chaos(cfg, "q", 1)
    p1 = ChaosPoly.first_chaos(cfg, "p", 1)
    assert wn_bracket(q1, p1).is_zero()


def test_duality_pairing():
    cfg = cfg2()
    q1 = ChaosPoly.first_chaos(cfg, "q", 1)
    sq = ChaosPoly.wick_monomial(cfg, (2, 0, 0, 0))
    assert duality(q1, q1) == 1
    assert duality(sq, sq) == 2
    assert duality(q1, sq) == 0
    mixed = ChaosPoly.wick_monomial(cfg, (2, 1, 0, 0)).scale(Fraction(1, 3))
    assert duality(mixed, mixed) == Fraction(2, 9)


def test_hida_norm_anchors():
    cfg = cfg2()
    q1 = ChaosPoly.first_chaos(cfg, "q", 1)
    for p in (0, 1, 2, -1):
        assert hida_norm(q1, p) == pytest.approx(4.0 ** p)
    sq = ChaosPoly.wick_monomial(cfg, (2, 0, 0, 0))
    assert hida_norm(sq) == pytest.approx(math.sqrt(2))
    assert hida_norm(sq, 0, 1.0) == pytest.approx(2.0)
    assert hida_norm(sq, 1, 1.0) == pytest.approx(2.0 * 4.0 ** 2)
    with pytest.raises(ValueError):
        hida_norm(q1, 0, -0.5)
    # p = 0, beta = 0 agrees with the duality pairing
    f = parse_chaos("1/2*:q1 p2: - :q2^2: + 3", cfg)
    assert hida_norm(f) == pytest.approx(math.sqrt(float(duality(f, f))))


def test_estimate_check_semantics():
    cfg = cfg2()
    two = ChaosPoly.constant(cfg, 2)
    three = ChaosPoly.constant(cfg, 3)
    rep = estimate_check(two, three)
    assert not rep.vacuous and rep.ratio == 0.0 and rep.passed
    assert rep.budget == pytest.approx(0.25 * 2 * 6)
    rep0 = estimate_check(ChaosPoly.zero(cfg), three)
    assert rep0.vacuous and rep0.passed
    q1 = ChaosPoly.first_chaos(cfg, "q", 1)
    p1 = ChaosPoly.first_chaos(cfg, "p", 1)
    rep1 = estimate_check(q1, p1, p=1, q=2)
    assert not rep1.vacuous and rep1.ratio > 0 and rep1.passed
    d = rep1.to_dict()
    assert d["p"] == 1 and d["q"] == 2 and d["ratio"] == rep1.ratio
    with pytest.raises(ValueError):
        estimate_check(q1, p1, q=0)


def test_parse_round_trip():
    cfg = cfg2()
    for text in (":q1:", "-2*:p2: + :q1:", "-1 + 3/2*:q1^2 p2:",
                 "1/2*:q1 p1: - :q2^2: + 3"):
        f = parse_chaos(text, cfg)
        assert parse_chaos(str(f), cfg) == f


def test_parse_errors_carry_positions():
    cfg = cfg2()
    with pytest.raises(ChaosParseError) as info:
        parse_chaos(":q3:", cfg)
    assert info.value.position > 0
    with pytest.raises(ChaosParseError):
        parse_chaos(":q1", cfg)
    with pytest.raises(ChaosParseError):
        parse_chaos("::", cfg)
    with pytest.raises(ChaosParseError):
        parse_chaos("2*", cfg)
    with pytest.raises(ChaosParseError):
        parse_chaos(":x1:", cfg)


def test_parse_enforces_user_cap():
    cfg = cfg2(cap=2)
    with pytest.raises(OrderOverflow) as info:
        parse_chaos(":q1^3:", cfg)
    assert info.value.required_cap == 3
    # the hard cap still admits products above the user cap internally
    sq = parse_chaos(":q1^2:", cfg)
    assert pointwise_product(sq, sq).degree() == 4


def test_backend_enumeration_and_protocol():
    cfg = cfg2()
    b = WickBackend(cfg, 15)
    assert b.n == 2 and b.label == "wick-chaos[K=2]"
    assert b.alpha_of(1) == (0, 0, 0, 0)
    assert b.degree_of(1) == 0 and b.degree_of(2) == 1
    assert b.count_up_to(1) == 5 and b.count_up_to(2) == 15
    for i in range(1, 16):
        assert b.index_of(b.alpha_of(i)) == i
        assert b.u2(i) == math.prod(math.factorial(e) for e in b.alpha_of(i))
        assert b.present_u2(i) == b.u2(i)
    labels = [lbl for lbl, _, _ in b.coordinates()]
    assert labels == ["1", "2"]
    assert b.band_bound(parse_chaos(":q1^2:", cfg)) == 2
    assert b.obs_is_zero(b.obs_bracket(b.obs_one(), b.obs_one()))
    q1 = ChaosPoly.first_chaos(cfg, "q", 1)
    assert b.obs_pow(q1, 2) == pointwise_product(q1, q1)


def test_backend_rejects_sizes_beyond_cap():
    cfg = cfg2(cap=1)
    WickBackend(cfg, 5)
    with pytest.raises(ValueError):
        WickBackend(cfg, 6)
    with pytest.raises(ValueError):
        WickBackend(cfg, 0)


def test_unit_quantizes_to_identity():
    cfg = cfg2()
    b = WickBackend(cfg, 15)
    assert compare("R(1)", build_R(b.obs_one(), b),
                   CoeffMatrix.identity(b)).exact


def test_wn_quantize_windows_and_commutator():
    cfg = cfg2(cap=3, lam=(Fraction(1), Fraction(1, 2)))
    q2 = ChaosPoly.first_chaos(cfg, "q", 2)
    p2 = ChaosPoly.first_chaos(cfg, "p", 2)
    Q, R, Qhat, backend = wn_quantize(q2, 35)
    assert Q.window == 35 and R.window == 35 and Qhat.window == 35
    comm = Qhat.commutator(build_Qhat(p2, backend))
    # weighted bracket {q2, p2} = 1/2, so the commutator is -4i * (1/2) * Id
    want = CoeffMatrix.identity(backend).scale(CFrac(0, -2))
    assert compare("comm", comm, want).exact


def test_wn_quantize_rejects_overweight_observable():
    cfg = cfg2(cap=2)
    sq = parse_chaos(":q1^2:", cfg)
    cube = pointwise_product(sq, ChaosPoly.first_chaos(cfg, "q", 1))
    with pytest.raises(OrderOverflow):
        wn_quantize(cube, 15)


def test_lemma_suite_holds_over_chaos_backend():
    cfg = cfg2()
    b = WickBackend(cfg, 35)
    rng = Random(5)

    def rand_poly():
        out = ChaosPoly.zero(cfg)
        for _ in range(3):
            alpha = tuple(rng.randrange(0, 2) for _ in range(4))
            if sum(alpha) > 2:
                continue
            out = out + ChaosPoly.wick_monomial(cfg, alpha).scale(
                Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)))
        return out

    for _ in range(4):
        checks = verify_lemma(rand_poly(), rand_poly(), b)
        assert all(c.exact for c in checks), [c.identity for c in checks]
