"""Analysis and synthesis between function values and basis coefficients.

Inner products are Gauss sums matched to the family weight. The weight is
cancelled analytically: a coefficient is ``sum_j s_j f(x_j) phi_n(x_j)`` with
``s_j = w_j / W(x_j)`` taken from :attr:`QuadratureRule.scaled_weights`, so
no exponential is ever divided out numerically.
"""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .families import GridSamples, basis_table, get_family
from .ladder import CoefficientVector
from .quadrature import QuadratureRule, default_quad_size, gauss_rule

__all__ = [
    "analyze",
    "analyze_samples",
    "synthesize",
    "parseval_residual",
    "sample_interpolant",
]


def _rule(family, n_max: int, m: int | None) -> QuadratureRule:
    return gauss_rule(family, default_quad_size(n_max) if m is None else m)


def _values_at(f: Callable, nodes: np.ndarray) -> np.ndarray:
    values = np.array([f(float(x)) for x in nodes], dtype=complex)
    if not np.all(np.isfinite(values)):
        bad = nodes[~np.isfinite(values)]
        raise ValueError(f"function is not finite at quadrature node(s) {bad[:3].tolist()}")
    return values


def analyze(family, f: Callable, n_max: int, m: int | None = None) -> CoefficientVector:
    """Coefficients f_n = <phi_n, f> for n <= n_max.

    ``f`` is called once per quadrature node with a float; it may return
    complex values. The default quadrature size is ``2 * n_max + 16``.
    """
    family = get_family(family)
    rule = _rule(family, n_max, m)
    values = _values_at(f, rule.nodes)
    phi = basis_table(family, n_max, rule.nodes)
    return CoefficientVector(family, phi @ (rule.scaled_weights * values))


def sample_interpolant(samples: GridSamples) -> Callable[[float], complex]:
    """Not-a-knot cubic spline through grid samples, zero outside the sampled range.

    Accuracy is that of the spline: fourth order in the sample spacing. Parts
    of the function outside the sampled range are treated as zero.
    """
    if len(samples) < 4:
        raise ValueError("need at least 4 samples for not-a-knot cubic interpolation")
    x = samples.points
    re = CubicSpline(x, samples.values.real, bc_type="not-a-knot")
    im = CubicSpline(x, samples.values.imag, bc_type="not-a-knot")
    lo, hi = x[0], x[-1]

    def f(t: float) -> complex:
        if t < lo or t > hi:
            return 0j
        return complex(float(re(t)), float(im(t)))

    return f


def analyze_samples(samples: GridSamples, n_max: int, m: int | None = None) -> CoefficientVector:
    return analyze(samples.family, sample_interpolant(samples), n_max, m)


def synthesize(v: CoefficientVector, points) -> GridSamples:
    """f(x) = sum_n v_n phi_n(x) at each point, with compensated summation."""
    family = v.family
    points = np.array(points, dtype=float).reshape(-1)
    if not np.all(family.contains(points)):
        raise ValueError(f"synthesis points outside the {family.name} interval {family.interval}")
    if points.size == 0:
        return GridSamples(family, points, np.zeros(0, dtype=complex))
    phi = basis_table(family, v.n_max, points)
    terms = v.coeffs[:, None] * phi
    values = np.array(
        [complex(math.fsum(col.real), math.fsum(col.imag)) for col in terms.T],
        dtype=complex,
    )
    return GridSamples(family, points, values)


def parseval_residual(f: Callable, v: CoefficientVector, m: int | None = None) -> float:
    """| sum_n |v_n|^2 - int |f|^2 dx | with the integral by the family Gauss rule."""
    rule = _rule(v.family, v.n_max, m)
    values = _values_at(f, rule.nodes)
    integral = math.fsum(rule.scaled_weights * np.abs(values) ** 2)
    return abs(v.norm2() - integral)
