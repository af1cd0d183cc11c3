"""Tensor Gauss-Hermite oracle for the weighted pairings.

Cross-checks the exact coefficient machinery by brute numerical
integration.  Rules escalate through a fixed order ladder until two
successive orders agree to a relative tolerance; for the polynomial
integrands used here the rule is exact once the order passes half the
degree, so the ladder terminates on its first confirmation.

The base rule integrates against exp(-t^2).  The SQUARED weight uses it
directly; the STANDARD weight exp(-|x|^2/2) substitutes x = sqrt(2) t,
picking up a sqrt(2) Jacobian per dimension.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .basis import BasisSpec, GaussWeight
from .poly import Polynomial, poisson_bracket

ORDER_LADDER = (8, 12, 16, 24, 32, 48)


def _eval_on_grid(p: Polynomial, grids: list[np.ndarray]) -> np.ndarray:
    total = np.zeros(grids[0].shape, dtype=complex)
    for mono, coeff in p.terms.items():
        term = np.full(grids[0].shape, complex(coeff))
        for k, e in enumerate(mono):
            if e:
                term = term * grids[k] ** e
        total = total + term
    return total


@lru_cache(maxsize=64)
def _grid(order: int, dim_n: int, weight: GaussWeight):
    nodes, weights = hermgauss(order)
    jacobian = 1.0
    if weight is GaussWeight.STANDARD:
        nodes = nodes * np.sqrt(2.0)
        jacobian = np.sqrt(2.0) ** dim_n
    mesh = np.meshgrid(*([nodes] * dim_n), indexing="ij")
    axes = tuple(m.reshape(-1) for m in mesh)
    wmesh = np.meshgrid(*([weights] * dim_n), indexing="ij")
    w_total = np.ones(axes[0].shape)
    for wm in wmesh:
        w_total = w_total * wm.reshape(-1)
    return axes, w_total * jacobian


def pairing_numeric(u: Polynomial, v: Polynomial, weight: GaussWeight,
                    rel_tol: float = 1e-11) -> complex:
    """Numerical <u, v> = integral of u(x) conj(v(x)) against the weight."""
    if u.dim_n != v.dim_n:
        raise ValueError(f"dimension mismatch: {u.dim_n} vs {v.dim_n}")
    prev = None
    for order in ORDER_LADDER:
        axes, w = _grid(order, 2 * u.dim_n, weight)
        val = complex(np.sum(w * _eval_on_grid(u, axes) * np.conj(_eval_on_grid(v, axes))))
        if prev is not None and abs(val - prev) <= rel_tol * max(1.0, abs(val)):
            return val
        prev = val
    raise RuntimeError(f"quadrature ladder exhausted without agreement (last={prev!r})")


def gram_numeric(spec: BasisSpec, i: int, j: int) -> complex:
    ei = spec.basis_element(i).map_coefficients(complex)
    ej = spec.basis_element(j).map_coefficients(complex)
    return pairing_numeric(ei, ej, spec.weight)


def entry_numeric(kind: str, h: Polynomial, spec: BasisSpec, i: int, j: int) -> complex:
    """Matrix entry (i, j) of Q(h) or R(h) by numerical pairing."""
    hc = h.map_coefficients(complex)
    ej = spec.basis_element(j).map_coefficients(complex)
    ei = spec.basis_element(i).map_coefficients(complex)
    if kind == "Q":
        u = poisson_bracket(hc, ej)
    elif kind == "R":
        u = hc * ej
    else:
        raise ValueError(f"kind must be 'Q' or 'R', got {kind!r}")
    return pairing_numeric(u, ei, spec.weight)
