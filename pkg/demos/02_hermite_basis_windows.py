#!/usr/bin/env python3
"""The weighted Hermite basis and the validity window of truncated products.

Basis elements are indexed from 1 in graded order.  Entries of a freshly
built matrix are certified on the whole truncation; multiplying two
matrices shrinks the certified window, and the window is tracked so that
no entry outside it is ever reported.
"""

from cuntzquant import BasisSpec, GaussWeight, build_Q, build_R, parse_polynomial

spec = BasisSpec(1, 21)
print("backend:", spec)
print()

print("first six basis elements (graded order):")
for i in range(1, 7):
    print(f"  e_{i} =", spec.basis_element(i))
print()

print("exact orthonormality of the first six elements:")
rows = []
for i in range(1, 7):
    row = [str(spec.pair(spec.basis_element(i), j)) for j in range(1, 7)]
    rows.append(" ".join(f"{s:>2}" for s in row))
print("\n".join("  " + r for r in rows))
print()

f = parse_polynomial("q1^2 + p1^2", 1)
Q = build_Q(f, spec)
R = build_R(f, spec)
print("Q(f):", Q)
print("R(f):", R)
print()

prod = Q @ R
print("Q(f) @ R(f):", prod)
print("certified window after one product:", prod.window)
comm = Q.commutator(R)
print("[Q(f), R(f)]:", comm)
print()

print("the same product at a doubled truncation agrees entrywise:")
big = BasisSpec(1, 45)
prod_big = build_Q(f, big) @ build_R(f, big)
agree = all(prod.entry(i, j) == prod_big.entry(i, j)
            for i in range(1, prod.window + 1)
            for j in range(1, prod.window + 1))
print("  bit-identical on the smaller window:", agree)
print()

print("weights: the squared weight is the default; the standard one")
print("rescales degree counts but keeps orthonormality exact:")
std = BasisSpec(1, 10, weight=GaussWeight.STANDARD)
print("  e_2 (squared): ", spec.basis_element(2))
print("  e_2 (standard):", std.basis_element(2))
