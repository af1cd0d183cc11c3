#!/usr/bin/env python3
"""Ladder commutation relations and word expressions over the generators.

Under the standard weight the starred relations hold exactly: each Q-slot
behaves as a lowering operator with [Q_a, Q_b*] = delta_ab, and the base
coordinate actions are plain words in the generators.  Quantization of any
monomial then unfolds recursively into a word expression whose evaluation
matches the directly built matrix entry for entry.
"""

from cuntzquant import (BasisSpec, GaussWeight, build_ccr, build_Q, compare,
                        evaluate_expression, expression_text, parse_polynomial,
                        quantize_via_ccr, verify_adjoint_relation, verify_ccr,
                        verify_ccr_starred)

fam = build_ccr(1)
print("family over one conjugate pair, slots:", fam.slots)
print("observables: slot 2 ->", fam.observable(2), " slot 3 ->", fam.observable(3))
print()

suites = (("pair commutators", verify_ccr(fam)),
          ("adjoint relations", verify_adjoint_relation(fam)),
          ("starred relations", verify_ccr_starred(fam)))
for name, checks in suites:
    print(f"{name}: {len(checks)} checks, all exact:",
          all(c.exact for c in checks))
print()

print("base words:")
for text in ("q1", "p1"):
    q_expr, r_expr = quantize_via_ccr(parse_polynomial(text, 1), fam)
    print(f"  Q({text}) = {expression_text(q_expr)}")
    print(f"  R({text}) = {expression_text(r_expr)}")
print()

f = parse_polynomial("q1^2*p1", 1)
spec = BasisSpec(1, 45, weight=GaussWeight.STANDARD)
fam45 = build_ccr(1, spec)
q_expr, r_expr = quantize_via_ccr(f, fam45)
print(f"Q({f}) as a word expression:")
print(" ", expression_text(q_expr))
direct = build_Q(f, spec)
check = compare("words", evaluate_expression(q_expr, fam45), direct)
print("evaluated words equal the direct build:", check.exact,
      f"(window {check.window})")
print()

left, _ = quantize_via_ccr(f, fam45, split="left")
right, _ = quantize_via_ccr(f, fam45, split="right")
print("splitting the recursion from the other end changes the words:")
print("  left: ", expression_text(left))
print("  right:", expression_text(right))
same = compare("splits", evaluate_expression(left, fam45),
               evaluate_expression(right, fam45))
print("but not the evaluated operator:", same.exact)
