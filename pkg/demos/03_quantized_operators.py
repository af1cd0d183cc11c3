#!/usr/bin/env python3
"""The operator triple Q, R, Qhat = R - 2iQ and its commutator rule.

Q carries the bracket action, R the multiplication action.  The unit maps
to the identity, R is multiplicative, and the commutator of two Qhat
operators lands on -2i (Qhat + R) of the bracket: the -2i Qhat form alone
misses by the R term, which is visible below as the deviation of exactly 2
on a conjugate pair.
"""

import tempfile

from cuntzquant import (BasisSpec, build_Q, build_Qhat, build_R, compare,
                        parse_polynomial, poisson_bracket, verify_lemma,
                        write_matrix_market)
from cuntzquant.scalars import CFrac

spec = BasisSpec(1, 45)
f = parse_polynomial("q1", 1)
g = parse_polynomial("p1", 1)

Qf = build_Q(f, spec)
print("Q(q1):", Qf)
print("  entry (1,3) =", Qf.entry(1, 3))
print("  entry (3,1) =", Qf.entry(3, 1))
Rf = build_R(f, spec)
print("R(q1):", Rf)
print("  entry (1,2) =", Rf.entry(1, 2), " entry (2,1) =", Rf.entry(2, 1))
print()

one = parse_polynomial("1", 1)
unit = compare("unit", build_Qhat(one, spec),
               build_R(one, spec))
print("Qhat(1) equals R(1) equals Id:", unit.exact)
print()

print("compatibility identities for (f, g) = (q1, p1):")
for check in verify_lemma(f, g, spec):
    print(f"  {check.identity}: exact={check.exact}")
print()

lhs = build_Qhat(f, spec).commutator(build_Qhat(g, spec))
br = poisson_bracket(f, g)
claimed = build_Qhat(br, spec).scale(CFrac(0, -2))
corrected = (build_Qhat(br, spec) + build_R(br, spec)).scale(CFrac(0, -2))
print("[Qhat(q1), Qhat(p1)] against the two candidate constants:")
c1 = compare("claimed", lhs, claimed)
c2 = compare("corrected", lhs, corrected)
print(f"  -2i Qhat({{f,g}}):          deviation {c1.max_abs_deviation}")
print(f"  -2i (Qhat + R)({{f,g}}):    deviation {c2.max_abs_deviation}, exact={c2.exact}")
print("  (the bracket is 1, so the commutator is -4i times the identity)")
print("  entry (1,1) of the commutator:", lhs.entry(1, 1))
print()

with tempfile.NamedTemporaryFile(suffix=".mtx", delete=False) as fh:
    path = fh.name
write_matrix_market(lhs, path, comment="[Qhat(q1), Qhat(p1)] at n=1, N=45")
with open(path) as fh:
    head = [next(fh) for _ in range(6)]
print("Matrix Market export of the commutator:")
print("".join("  " + line for line in head), end="")
