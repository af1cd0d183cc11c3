#!/usr/bin/env python3
"""Exact polynomial observables and their Poisson bracket.

Coefficients are rationals throughout, so every identity printed here is
checked by equality of dictionaries, not by a tolerance.
"""

from fractions import Fraction

from cuntzquant import Polynomial, parse_polynomial, poisson_bracket

n = 2
f = parse_polynomial("q1^2*p2 - 3/2*q2", n)
g = parse_polynomial("p1*p2 + q1", n)
h = parse_polynomial("q2^2", n)

print("f =", f)
print("g =", g)
print("h =", h)
print()

print("{f, g} =", poisson_bracket(f, g))
print("{g, f} =", poisson_bracket(g, f))
print()

# canonical pairs
for i in (1, 2):
    qi = Polynomial.q(n, i)
    pi = Polynomial.p(n, i)
    print(f"{{q{i}, p{i}}} =", poisson_bracket(qi, pi))

print()

antisym = poisson_bracket(f, g) + poisson_bracket(g, f)
print("antisymmetry: {f,g} + {g,f} =", antisym)

leibniz = (poisson_bracket(f, g * h)
           - poisson_bracket(f, g) * h
           - g * poisson_bracket(f, h))
print("Leibniz defect: {f, g h} - {f,g} h - g {f,h} =", leibniz)

jacobi = (poisson_bracket(f, poisson_bracket(g, h))
          + poisson_bracket(g, poisson_bracket(h, f))
          + poisson_bracket(h, poisson_bracket(f, g)))
print("Jacobi defect:", jacobi)

print()
scaled = f.scale(Fraction(1, 3))
print("f/3 =", scaled)
print("degree of f:", f.degree())
print("f at (q,p) = (1, 1/2, -1, 2):", f.evaluate((1, Fraction(1, 2), -1, 2)))
