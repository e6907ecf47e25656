"""Hermite, Laguerre and Legendre families.

Raw polynomials, orthonormal basis functions and their first derivatives,
all evaluated by upward three-term recurrence. The table functions are
vectorised over ``x`` and return arrays of shape ``(n_max + 1,) + x.shape``;
the scalar functions are thin wrappers around them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "Kind",
    "FamilyTag",
    "HERMITE",
    "LAGUERRE",
    "LEGENDRE",
    "FAMILIES",
    "get_family",
    "GridSamples",
    "eval_raw",
    "eval_basis",
    "eval_basis_derivative",
    "raw_table",
    "raw_derivative_table",
    "basis_table",
    "basis_derivative_table",
    "weight",
]

# Below this distance from a degenerate endpoint the ladder-based derivative
# loses too many digits to cancellation; switch to the differentiated recurrence.
ENDPOINT_GUARD = 1e-6


class Kind(str, Enum):
    HERMITE = "hermite"
    LAGUERRE = "laguerre"
    LEGENDRE = "legendre"


@dataclass(frozen=True)
class FamilyTag:
    kind: Kind
    interval: tuple[float, float]
    algebra: str
    casimir_value: float

    def __post_init__(self):
        expected = {
            Kind.HERMITE: ((-math.inf, math.inf), "h1", 0.0),
            Kind.LAGUERRE: ((0.0, math.inf), "su11", -0.25),
            Kind.LEGENDRE: ((-1.0, 1.0), "su11", -0.25),
        }[Kind(self.kind)]
        if (tuple(self.interval), self.algebra, self.casimir_value) != expected:
            raise ValueError(f"inconsistent family tag for {self.kind}")

    @property
    def name(self) -> str:
        return Kind(self.kind).value

    def contains(self, x, closed: bool = True) -> np.ndarray:
        a, b = self.interval
        x = np.asarray(x, dtype=float)
        if closed:
            return (x >= a) & (x <= b) & np.isfinite(x)
        return (x > a) & (x < b)


HERMITE = FamilyTag(Kind.HERMITE, (-math.inf, math.inf), "h1", 0.0)
LAGUERRE = FamilyTag(Kind.LAGUERRE, (0.0, math.inf), "su11", -0.25)
LEGENDRE = FamilyTag(Kind.LEGENDRE, (-1.0, 1.0), "su11", -0.25)
FAMILIES = (HERMITE, LAGUERRE, LEGENDRE)


def get_family(family) -> FamilyTag:
    """Accept a FamilyTag, a Kind or a case-insensitive name."""
    if isinstance(family, FamilyTag):
        return family
    try:
        kind = Kind(family.lower() if isinstance(family, str) else family)
    except (ValueError, AttributeError):
        raise ValueError(f"unknown family {family!r}; expected hermite, laguerre or legendre") from None
    return {Kind.HERMITE: HERMITE, Kind.LAGUERRE: LAGUERRE, Kind.LEGENDRE: LEGENDRE}[kind]


@dataclass(frozen=True)
class GridSamples:
    """Function values on a strictly increasing grid inside the family interval.

    Endpoints of finite intervals are accepted (Laguerre ``x = 0``, Legendre
    ``x = +-1``) so that closed-interval evaluations can be carried around.
    """

    family: FamilyTag
    points: np.ndarray
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        family = get_family(self.family)
        points = np.array(self.points, dtype=float).reshape(-1)
        values = np.array(self.values, dtype=complex).reshape(-1)
        if points.shape != values.shape:
            raise ValueError("points and values must have the same length")
        if points.size and not np.all(family.contains(points)):
            raise ValueError(f"grid points outside the {family.name} interval {family.interval}")
        if np.any(np.diff(points) <= 0):
            raise ValueError("grid points must be strictly increasing")
        points.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.points.size


def weight(family, x) -> np.ndarray:
    """The Gauss weight of the family: exp(-x^2), exp(-x) or 1."""
    family = get_family(family)
    x = np.asarray(x, dtype=float)
    if family.kind is Kind.HERMITE:
        return np.exp(-x * x)
    if family.kind is Kind.LAGUERRE:
        return np.exp(-x)
    return np.ones_like(x)


def _check(family, n_max, x) -> tuple[FamilyTag, int, np.ndarray]:
    family = get_family(family)
    if isinstance(n_max, bool) or int(n_max) != n_max or n_max < 0:
        raise ValueError(f"basis index must be a non-negative integer, got {n_max!r}")
    x = np.asarray(x, dtype=float)
    if not np.all(family.contains(x)):
        raise ValueError(f"x outside the closed {family.name} interval {family.interval}")
    return family, int(n_max), x


def raw_table(family, n_max: int, x) -> np.ndarray:
    """H_n, L_n or P_n for n = 0..n_max."""
    family, n_max, x = _check(family, n_max, x)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    kind = family.kind
    if kind is Kind.HERMITE:
        out[1] = 2.0 * x
        for n in range(1, n_max):
            out[n + 1] = 2.0 * x * out[n] - 2.0 * n * out[n - 1]
    elif kind is Kind.LAGUERRE:
        out[1] = 1.0 - x
        for n in range(1, n_max):
            out[n + 1] = ((2 * n + 1 - x) * out[n] - n * out[n - 1]) / (n + 1)
    else:
        out[1] = x
        for n in range(1, n_max):
            out[n + 1] = ((2 * n + 1) * x * out[n] - n * out[n - 1]) / (n + 1)
    return out


def raw_derivative_table(family, n_max: int, x) -> np.ndarray:
    """Derivatives of the raw polynomials from the differentiated recurrence.

    Valid on the closed interval; used where the ladder identities degenerate.
    """
    family, n_max, x = _check(family, n_max, x)
    p = raw_table(family, n_max, x)
    d = np.zeros_like(p)
    if n_max == 0:
        return d
    kind = family.kind
    if kind is Kind.HERMITE:
        d[1] = 2.0
        for n in range(1, n_max):
            d[n + 1] = 2.0 * p[n] + 2.0 * x * d[n] - 2.0 * n * d[n - 1]
    elif kind is Kind.LAGUERRE:
        d[1] = -1.0
        for n in range(1, n_max):
            d[n + 1] = ((2 * n + 1 - x) * d[n] - p[n] - n * d[n - 1]) / (n + 1)
    else:
        d[1] = 1.0
        for n in range(1, n_max):
            d[n + 1] = ((2 * n + 1) * (p[n] + x * d[n]) - n * d[n - 1]) / (n + 1)
    return d


def basis_table(family, n_max: int, x) -> np.ndarray:
    """Orthonormal basis functions phi_0..phi_{n_max}.

    Hermite functions are generated by the normalised recurrence so that no
    intermediate H_n is ever formed; this keeps large n free of overflow.
    """
    family, n_max, x = _check(family, n_max, x)
    kind = family.kind
    if kind is Kind.HERMITE:
        out = np.empty((n_max + 1,) + x.shape)
        out[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
        if n_max >= 1:
            out[1] = math.sqrt(2.0) * x * out[0]
        for n in range(1, n_max):
            out[n + 1] = x * math.sqrt(2.0 / (n + 1)) * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
        return out
    if kind is Kind.LAGUERRE:
        # same recurrence as L_n; the factor exp(-x/2) does not depend on n
        out = np.empty((n_max + 1,) + x.shape)
        out[0] = np.exp(-0.5 * x)
        if n_max >= 1:
            out[1] = (1.0 - x) * out[0]
        for n in range(1, n_max):
            out[n + 1] = ((2 * n + 1 - x) * out[n] - n * out[n - 1]) / (n + 1)
        return out
    scale = np.sqrt(np.arange(n_max + 1) + 0.5).reshape((-1,) + (1,) * x.ndim)
    return scale * raw_table(family, n_max, x)


def basis_derivative_table(family, n_max: int, x) -> np.ndarray:
    """phi_n'(x) for n = 0..n_max, from the ladder identities.

    Hermite:  phi_n' = (sqrt(n) phi_{n-1} - sqrt(n+1) phi_{n+1}) / sqrt(2)
    Laguerre: x phi_n' = ((n+1) phi_{n+1} - n phi_{n-1} - phi_n) / 2
    Legendre: (1-x^2) P_n' = (x P_n - (n+1) P_{n+1} + n P_{n-1}) / 2
    """
    family, n_max, x = _check(family, n_max, x)
    kind = family.kind
    n = np.arange(n_max + 1, dtype=float).reshape((-1,) + (1,) * x.ndim)
    if kind is Kind.HERMITE:
        phi = basis_table(family, n_max + 1, x)
        lower = np.zeros_like(phi[:-1])
        lower[1:] = phi[:-2]
        return (np.sqrt(n) * lower - np.sqrt(n + 1) * phi[1:]) / math.sqrt(2.0)

    if kind is Kind.LAGUERRE:
        phi = basis_table(family, n_max + 1, x)
        lower = np.zeros_like(phi[:-1])
        lower[1:] = phi[:-2]
        near = x < ENDPOINT_GUARD
        safe_x = np.where(near, 1.0, x)
        out = ((n + 1) * phi[1:] - n * lower - phi[:-1]) / (2.0 * safe_x)
        if np.any(near):
            xe = x[near]
            fallback = np.exp(-0.5 * xe) * (raw_derivative_table(family, n_max, xe) - 0.5 * raw_table(family, n_max, xe))
            out[:, near] = fallback
        return out

    p = raw_table(family, n_max + 1, x)
    lower = np.zeros_like(p[:-1])
    lower[1:] = p[:-2]
    factor = 1.0 - x * x
    near = factor < ENDPOINT_GUARD
    safe = np.where(near, 1.0, factor)
    dp = (x * p[:-1] - (n + 1) * p[1:] + n * lower) / (2.0 * safe)
    if np.any(near):
        dp[:, near] = raw_derivative_table(family, n_max, x[near])
    return np.sqrt(n + 0.5) * dp


def _scalar(table_fn, family, n, x) -> float:
    family = get_family(family)
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"basis index must be a non-negative integer, got {n!r}")
    x = float(x)
    return float(table_fn(family, int(n), x)[int(n)])


def eval_raw(family, n: int, x: float) -> float:
    """H_n(x), L_n(x) or P_n(x)."""
    return _scalar(raw_table, family, n, x)


def eval_basis(family, n: int, x: float) -> float:
    """Orthonormal basis function K_n, M_n or sqrt(n + 1/2) P_n at x."""
    return _scalar(basis_table, family, n, x)


def eval_basis_derivative(family, n: int, x: float) -> float:
    return _scalar(basis_derivative_table, family, n, x)
