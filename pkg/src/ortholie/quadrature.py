"""Gauss rules for the three family weights.

Nodes are eigenvalues of the Jacobi matrix (symmetric tridiagonal matrix of
recurrence coefficients of the orthonormal polynomials), computed with an
implicit QL iteration that also tracks the first row of the eigenvector
matrix (Golub-Welsch).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .families import FamilyTag, Kind, basis_table, get_family, weight

__all__ = [
    "ConvergenceError",
    "QuadratureRule",
    "tridiagonal_eig",
    "jacobi_matrix",
    "zeroth_moment",
    "gauss_rule",
    "default_quad_size",
]

MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    pass


def tridiagonal_eig(diag, offdiag, max_sweeps: int = MAX_SWEEPS):
    """Eigenvalues and first eigenvector components of a symmetric tridiagonal matrix.

    Implicit QL with Wilkinson-type shifts. Only the first row of the
    accumulated rotation matrix is kept, which is all Golub-Welsch needs.
    Returns ``(eigenvalues, first_components)`` sorted by eigenvalue.

    Raises ConvergenceError if any eigenvalue needs more than ``max_sweeps``
    QL sweeps.
    """
    d = [float(v) for v in diag]
    n = len(d)
    if len(offdiag) != max(n - 1, 0):
        raise ValueError("offdiag must have length len(diag) - 1")
    e = [float(v) for v in offdiag] + [0.0]
    z = [0.0] * n
    if n:
        z[0] = 1.0
    eps = np.finfo(float).eps

    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == max_sweeps:
                raise ConvergenceError(f"QL iteration did not converge in {max_sweeps} sweeps")
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    order = np.argsort(d, kind="stable")
    return np.asarray(d)[order], np.asarray(z)[order]


def jacobi_matrix(family, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the m x m Jacobi matrix of the family weight."""
    family = get_family(family)
    k = np.arange(1, m, dtype=float)
    if family.kind is Kind.HERMITE:
        return np.zeros(m), np.sqrt(k / 2.0)
    if family.kind is Kind.LAGUERRE:
        return 2.0 * np.arange(m) + 1.0, k
    return np.zeros(m), k / np.sqrt(4.0 * k * k - 1.0)


def zeroth_moment(family) -> float:
    family = get_family(family)
    return {Kind.HERMITE: math.sqrt(math.pi), Kind.LAGUERRE: 1.0, Kind.LEGENDRE: 2.0}[family.kind]


def default_quad_size(n_max: int) -> int:
    return 2 * int(n_max) + 16


@dataclass(frozen=True)
class QuadratureRule:
    """m-point Gauss rule for the family weight, exact to degree 2m - 1.

    ``scaled_weights`` are ``weights / W(nodes)`` with W the family weight,
    computed without ever dividing by an exponential. Integrals of products of
    basis functions (which already carry the weight) use these.
    """

    family: FamilyTag
    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int
    scaled_weights: np.ndarray = field(repr=False)

    def __len__(self):
        return self.nodes.size

    def integrate(self, values) -> complex:
        """Sum of w_j * g(x_j) for samples g(x_j) of the weight-free integrand."""
        return np.dot(self.weights, np.asarray(values))


def _symmetrize(nodes, weights):
    m = nodes.size
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    if m % 2:
        nodes[m // 2] = 0.0
    return nodes, weights


def gauss_rule(family, m: int, max_sweeps: int = MAX_SWEEPS) -> QuadratureRule:
    """The m-point Gauss rule for exp(-x^2), exp(-x) or 1 on the family interval.

    Nodes are the QL eigenvalues, weights ``mu_0 * z_j^2`` with ``z_j`` the
    first eigenvector components. The weight-free ``scaled_weights`` come from
    the Christoffel sum ``1 / sum_k phi_k(x_j)^2`` over the orthonormal basis
    functions and are checked against the eigenvector weights.

    For Laguerre rules beyond roughly 250 nodes the outermost ``weights``
    underflow to zero; ``scaled_weights`` stay finite.
    """
    family = get_family(family)
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise ValueError(f"quadrature size must be a positive integer, got {m!r}")
    m = int(m)
    diag, off = jacobi_matrix(family, m)
    nodes, first = tridiagonal_eig(diag, off, max_sweeps=max_sweeps)
    weights = zeroth_moment(family) * first**2

    phi = basis_table(family, m - 1, nodes)
    scaled = 1.0 / np.einsum("kj,kj->j", phi, phi)
    if family.kind is not Kind.LAGUERRE:
        nodes, weights = _symmetrize(nodes, weights)
        scaled = 0.5 * (scaled + scaled[::-1])

    christoffel = scaled * weight(family, nodes)
    normal = christoffel > np.finfo(float).tiny
    if not np.allclose(weights[normal], christoffel[normal], rtol=1e-8, atol=0.0):
        raise ConvergenceError("Golub-Welsch weights disagree with the Christoffel sum")
    if not (np.all(np.diff(nodes) > 0) and np.all(family.contains(nodes, closed=False))):
        raise ConvergenceError("quadrature nodes are not strictly increasing inside the interval")

    for arr in (nodes, weights, scaled):
        arr.flags.writeable = False
    return QuadratureRule(family, nodes, weights, 2 * m - 1, scaled)
