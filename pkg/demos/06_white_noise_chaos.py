#!/usr/bin/env python3
"""Finitely many white-noise modes: chaos polynomials, brackets, quantization.

Observables here are rational combinations of Wick monomials over 2K
coordinates.  The pointwise product linearizes into the chaos basis, the
Wick product adds exponents, the S transform exchanges the two, and the
weighted bracket plugs into the same quantizer machinery as the Hermite
backend, with every identity exact at the truncation.
"""

from fractions import Fraction

from cuntzquant import (ChaosPoly, WhiteNoiseConfig, WickBackend, build_Qhat,
                        compare, duality, estimate_check, hida_norm, parse_chaos,
                        pointwise_product, s_transform, verify_lemma,
                        wick_product, wn_bracket, wn_quantize)
from cuntzquant.matrices import CoeffMatrix
from cuntzquant.scalars import CFrac

lam = tuple(Fraction(1, 2 ** n) for n in range(1, 5))
cfg = WhiteNoiseConfig(modes=4, order_cap=3, lam=lam)
print("configuration:", cfg.modes, "modes, order cap", cfg.order_cap,
      "(hard cap", str(cfg.hard_cap) + "), weights", [str(x) for x in cfg.lam])
print()

f = parse_chaos(":q1^2: - 1/2*:p2:", cfg)
g = parse_chaos(":q1 p1:", cfg)
print("f =", f)
print("g =", g)
print()

q1 = ChaosPoly.first_chaos(cfg, "q", 1)
print("pointwise :q1: * :q1: =", pointwise_product(q1, q1))
print("Wick      :q1: <> :q1: =", wick_product(q1, q1))
print("S(f <> g) =", s_transform(wick_product(f, g)))
print("S(f) S(g) =", s_transform(f) * s_transform(g))
print()

print("{f, g} =", wn_bracket(f, g))
p1 = ChaosPoly.first_chaos(cfg, "p", 1)
p2 = ChaosPoly.first_chaos(cfg, "p", 2)
q2 = ChaosPoly.first_chaos(cfg, "q", 2)
print("{q1, p1} =", wn_bracket(q1, p1), "  {q2, p2} =", wn_bracket(q2, p2))
print()

print("duality and norms:")
sq = parse_chaos(":q1^2:", cfg)
print("  <<:q1^2:, :q1^2:>> =", duality(sq, sq))
print("  ||:q1:||_p for p = 0,1,2:",
      [hida_norm(q1, p) for p in (0, 1, 2)],
      "(the first eigenvalue is 4)")
print()

backend = WickBackend(cfg, 165)
checks = verify_lemma(f, parse_chaos(":p1:", cfg), backend)
print("compatibility identities over the chaos basis:",
      all(c.exact for c in checks))

Q, R, Qhat, b45 = wn_quantize(q1, 45)
print("quantized :q1: at size 45:")
print("  Q    =", Q)
print("  R    =", R)
print("  Qhat =", Qhat)
comm = build_Qhat(q1, b45).commutator(build_Qhat(p1, b45))
want = CoeffMatrix.identity(b45).scale(CFrac(0, -2)).scale(lam[0] * 2)
print("[Qhat(q1), Qhat(p1)] = -4i lambda_1 Id:",
      compare("pair", comm, want).exact, f"(lambda_1 = {lam[0]})")
print()

rep = estimate_check(f, g, p=0, q=1)
print("bracket-term estimate report:")
print("  observed norm:", round(rep.lhs_norm, 6))
print("  budget:       ", round(rep.budget, 6))
print("  ratio:        ", round(rep.ratio, 6), " vacuous:", rep.vacuous)
