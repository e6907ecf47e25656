"""Perelomov coherent states of h(1) and su(1,1).

h(1) (Hermite):      c_n = exp(-|z|^2 / 2) z^n / sqrt(n!)
su(1,1) (Laguerre, Legendre):  c_n = sqrt(1 - |alpha|^2) alpha^n,  alpha = exp(i theta) tanh(xi)

The coherent *polynomials* sum the same weights against the raw L_n and P_n;
the coherent *vector* lives in the orthonormal basis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .families import Kind, basis_table, get_family, raw_table
from .ladder import CoefficientVector

__all__ = [
    "CoherentParameter",
    "hyperboloid_to_disk",
    "coherent_coefficients",
    "tail_bound",
    "default_n_max",
    "coherent_eval",
    "coherent_closed_form",
    "DEFAULT_TAIL",
]

DEFAULT_TAIL = 1e-12


def hyperboloid_to_disk(xi: float, theta: float) -> complex:
    """Map hyperboloid coordinates (xi, theta) to alpha = exp(i theta) tanh(xi)."""
    if xi < 0:
        raise ValueError(f"xi must be non-negative, got {xi}")
    return cmath.exp(1j * theta) * math.tanh(xi)


@dataclass(frozen=True)
class CoherentParameter:
    """Label of a coherent state: z for h(1), alpha in the unit disk for su(1,1)."""

    algebra: str
    value: complex
    xi: float | None = None
    theta: float | None = None

    def __post_init__(self):
        if self.algebra not in ("h1", "su11"):
            raise ValueError(f"algebra must be 'h1' or 'su11', got {self.algebra!r}")
        value = complex(self.value)
        if not cmath.isfinite(value):
            raise ValueError("coherent parameter must be finite")
        if (self.xi is None) != (self.theta is None):
            raise ValueError("xi and theta must be given together")
        if self.xi is not None:
            if self.algebra != "su11":
                raise ValueError("hyperboloid coordinates only apply to su(1,1)")
            if abs(value - hyperboloid_to_disk(self.xi, self.theta)) > 1e-14:
                raise ValueError("value does not match exp(i theta) tanh(xi)")
        if self.algebra == "su11" and not abs(value) < 1.0:
            raise ValueError(f"su(1,1) parameter must lie in the open unit disk, |alpha| = {abs(value)}")
        object.__setattr__(self, "value", value)

    @classmethod
    def h1(cls, z: complex) -> CoherentParameter:
        return cls("h1", z)

    @classmethod
    def su11(cls, alpha: complex) -> CoherentParameter:
        return cls("su11", alpha)

    @classmethod
    def from_hyperboloid(cls, xi: float, theta: float) -> CoherentParameter:
        return cls("su11", hyperboloid_to_disk(xi, theta), float(xi), float(theta))

    def to_dict(self) -> dict:
        if self.xi is not None:
            return {"xi": self.xi, "theta": self.theta}
        return {"algebra": self.algebra, "re": self.value.real, "im": self.value.imag}

    @classmethod
    def from_dict(cls, d: dict) -> CoherentParameter:
        if "xi" in d:
            return cls.from_hyperboloid(float(d["xi"]), float(d["theta"]))
        return cls(d["algebra"], complex(float(d["re"]), float(d["im"])))


def _matching(family, p: CoherentParameter):
    family = get_family(family)
    if family.algebra != p.algebra:
        raise ValueError(f"{family.name} needs a {family.algebra} parameter, got {p.algebra}")
    return family


def tail_bound(p: CoherentParameter, n_max: int) -> float:
    """Norm-squared missing from the truncation at n_max."""
    s = abs(p.value) ** 2
    if p.algebra == "su11":
        return s ** (n_max + 1)
    if s == 0.0:
        return 0.0
    # 1 - exp(-s) sum_{n <= N} s^n / n! is the regularised lower incomplete gamma P(N + 1, s)
    return float(gammainc(n_max + 1, s))


def default_n_max(p: CoherentParameter, tail: float = DEFAULT_TAIL) -> int:
    """Smallest truncation whose dropped part has norm at most ``tail``.

    The norm, not the squared norm, is bounded so that pointwise sums such as
    :func:`coherent_eval` are accurate to about ``tail`` as well.
    """
    if not 0.0 < tail < 1.0:
        raise ValueError("tail target must lie in (0, 1)")
    r = abs(p.value)
    if r == 0.0:
        return 0
    target = tail * tail
    n = 0
    if p.algebra == "su11":
        n = max(0, math.ceil(math.log(target) / (2.0 * math.log(r))) - 1)
    while tail_bound(p, n) > target:
        n += 1
    return n


def _weights(p: CoherentParameter, n_max: int) -> np.ndarray:
    c = np.empty(n_max + 1, dtype=complex)
    v = p.value
    if p.algebra == "su11":
        c[0] = math.sqrt(1.0 - abs(v) ** 2)
        for n in range(n_max):
            c[n + 1] = c[n] * v
    else:
        c[0] = math.exp(-0.5 * abs(v) ** 2)
        for n in range(n_max):
            c[n + 1] = c[n] * v / math.sqrt(n + 1)
    return c


def coherent_coefficients(family, p: CoherentParameter, n_max: int | None = None) -> CoefficientVector:
    """Coherent vector in the orthonormal basis, truncated at n_max.

    When ``n_max`` is omitted it is chosen so that the dropped tail has norm
    below 1e-12 (:func:`tail_bound` below 1e-24).
    """
    family = _matching(family, p)
    n_max = default_n_max(p) if n_max is None else int(n_max)
    return CoefficientVector(family, _weights(p, n_max))


def coherent_eval(family, p: CoherentParameter, x: float, n_max: int | None = None) -> complex:
    """Truncated-sum value of the coherent function at x.

    Hermite sums against K_n; Laguerre and Legendre against the raw L_n and
    P_n, i.e. the coherent polynomials L_alpha and P_alpha.
    """
    family = _matching(family, p)
    n_max = default_n_max(p) if n_max is None else int(n_max)
    c = _weights(p, n_max)
    if family.kind is Kind.HERMITE:
        table = basis_table(family, n_max, x)
    else:
        table = raw_table(family, n_max, x)
    terms = c * table
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def coherent_closed_form(family, p: CoherentParameter, x: float) -> complex:
    """Generating-function closed forms of the coherent functions.

    Hermite:  pi^(-1/4) exp(-|z|^2/2 - x^2/2 + sqrt(2) x z - z^2/2)
    Laguerre: sqrt(1 - |a|^2) exp(-x a / (1 - a)) / (1 - a)
    Legendre: sqrt(1 - |a|^2) / sqrt(1 - 2 a x + a^2), principal branch
    """
    family = _matching(family, p)
    x = float(x)
    if not family.contains(x):
        raise ValueError(f"x outside the closed {family.name} interval {family.interval}")
    v = p.value
    if family.kind is Kind.HERMITE:
        exponent = -0.5 * abs(v) ** 2 - 0.5 * x * x + math.sqrt(2.0) * x * v - 0.5 * v * v
        return complex(math.pi**-0.25 * cmath.exp(exponent))
    norm = math.sqrt(1.0 - abs(v) ** 2)
    if family.kind is Kind.LAGUERRE:
        return norm * cmath.exp(-x * v / (1.0 - v)) / (1.0 - v)
    return norm / cmath.sqrt(1.0 - 2.0 * v * x + v * v)
