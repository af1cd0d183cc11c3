#!/usr/bin/env python3
"""Concrete isometries on l2(N) and lifts of windowed matrices.

The pairing bijection on N x N hands each generator S_k its own copy of
the coordinate space, which makes the isometry relations and the disjoint
range partition checkable coordinate by coordinate.  A windowed matrix
lifts to a finite sum c_ij S_i S_j*, and the lift reproduces the matrix
action exactly, including the operator norm bound on each column subspace.
"""

from random import Random

from cuntzquant import (BasisSpec, CuntzRep, SubspaceDecomposition, bound_check,
                        build_Qhat, cantor_pair, column_bound, lift, lifts_agree,
                        parse_polynomial, verify_cuntz)
from cuntzquant.scalars import Scalar

rep = CuntzRep(alphabet=64, dim=10_000)
print("pairing anchors: pair(0,0) =", cantor_pair(0, 0),
      " pair(0,1) =", cantor_pair(0, 1), " pair(1,2) =", cantor_pair(1, 2))
print("S_2 e_2 = e_" + str(rep.s_apply(2, 2)))
print()

report = verify_cuntz(rep)
print(f"isometry family at alphabet {rep.alphabet}, truncation {rep.dim}:")
print("  isometry failures:     ", report.isometry_failures)
print("  orthogonality failures:", report.orthogonality_failures)
print("  completeness failures: ", report.completeness_failures)
print("  passed:", report.passed)
print()

dec = SubspaceDecomposition(CuntzRep(alphabet=4, dim=40))
for k in range(1, 5):
    print(f"  range of S_{k} below 40:", dec.index_set(k))
print("  residual coordinates:  ", dec.residual())
print()

spec = BasisSpec(1, 45)
comm = build_Qhat(parse_polynomial("q1", 1), spec).commutator(
    build_Qhat(parse_polynomial("p1", 1), spec))
big = CuntzRep(alphabet=45, dim=cantor_pair(44, 80) + 1)
lifted = lift(comm, big)
print("lift of [Qhat(q1), Qhat(p1)]:")
print("  agrees with the windowed matrix:", lifts_agree(lifted, comm))
x = min(lifted.valid_coordinates)
out = lifted.apply({x: Scalar.one()})
print(f"  applied to delta_{x}:", {y: str(s) for y, s in out.items()})
print("  (the commutator is -4i times the identity on its window)")
print()

h = parse_polynomial("q1^2 + p1^2", 1)
spec21 = BasisSpec(1, 21)
print("column norm bound for h = q1^2 + p1^2:")
print("  B at column 2:", column_bound(h, 2, spec21))
result = bound_check(h, 2, spec21, CuntzRep(alphabet=21, dim=600), Random(11))
print("  measured equality on random vectors:", result.equality_exact,
      " max excess:", result.max_excess)
