"""Ladder operators of h(1) and su(1,1) acting on coefficient vectors.

Operators are index-shift rules, never dense matrices. ``Raise`` grows a
vector by one entry so no information is lost; ``Lower`` keeps the length and
leaves a zero in the top slot.

The differential realisations and the defining second-order equations are
evaluated pointwise with derivatives taken from the ladder identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .families import (
    ENDPOINT_GUARD,
    FamilyTag,
    Kind,
    basis_derivative_table,
    basis_table,
    get_family,
    raw_table,
)

__all__ = [
    "LadderOperator",
    "CoefficientVector",
    "basis_vector",
    "apply",
    "commutator",
    "commutator_defect",
    "casimir_apply",
    "differential_ladder_eval",
    "raw_derivatives",
    "ode_residual",
    "AlgebraMismatch",
]


class AlgebraMismatch(ValueError):
    pass


class LadderOperator(str, Enum):
    LOWER = "lower"
    RAISE = "raise"
    NUMBER = "number"
    IDENTITY = "identity"
    J3 = "j3"


LOWER, RAISE, NUMBER, IDENTITY, J3 = LadderOperator


@dataclass(frozen=True)
class CoefficientVector:
    """Coefficients f_0..f_N of a state in the orthonormal basis of ``family``."""

    family: FamilyTag
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex).reshape(-1)
        if coeffs.size == 0:
            raise ValueError("a coefficient vector needs at least one entry")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        coeffs.flags.writeable = False
        object.__setattr__(self, "family", get_family(self.family))
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n_max(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def resized(self, n_max: int) -> CoefficientVector:
        """Zero-padded or truncated copy with the given top index."""
        out = np.zeros(n_max + 1, dtype=complex)
        k = min(n_max + 1, self.coeffs.size)
        out[:k] = self.coeffs[:k]
        return CoefficientVector(self.family, out)

    def norm2(self) -> float:
        return math.fsum(np.abs(self.coeffs) ** 2)


def basis_vector(family, n: int, n_max: int | None = None) -> CoefficientVector:
    """The unit vector e_n, padded with zeros up to ``n_max``."""
    n_max = n if n_max is None else n_max
    if not 0 <= n <= n_max:
        raise ValueError(f"need 0 <= n <= n_max, got n={n}, n_max={n_max}")
    c = np.zeros(n_max + 1, dtype=complex)
    c[n] = 1.0
    return CoefficientVector(family, c)


def _check_op(op, family: FamilyTag) -> LadderOperator:
    op = LadderOperator(op)
    if op is J3 and family.algebra != "su11":
        raise AlgebraMismatch(f"J3 is not an element of h(1) ({family.name} family)")
    return op


def _shift_factors(family: FamilyTag, n: np.ndarray) -> np.ndarray:
    # matrix element <n-1| Lower |n> = <n| Raise |n-1>
    return np.sqrt(n) if family.algebra == "h1" else n


def apply(op, v: CoefficientVector) -> CoefficientVector:
    family = v.family
    op = _check_op(op, family)
    c = v.coeffs
    n = np.arange(c.size, dtype=float)
    if op is IDENTITY:
        return v
    if op is NUMBER:
        return CoefficientVector(family, n * c)
    if op is J3:
        return CoefficientVector(family, (n + 0.5) * c)
    if op is LOWER:
        out = np.zeros_like(c)
        out[:-1] = _shift_factors(family, n[1:]) * c[1:]
        return CoefficientVector(family, out)
    out = np.zeros(c.size + 1, dtype=complex)
    out[1:] = _shift_factors(family, n + 1) * c
    return CoefficientVector(family, out)


def _combine(*terms) -> np.ndarray:
    """Sum of coef * vector over zero-padded vectors of differing lengths."""
    size = max(vec.coeffs.size for _, vec in terms)
    out = np.zeros(size, dtype=complex)
    for coef, vec in terms:
        out[: vec.coeffs.size] += coef * vec.coeffs
    return out


# [A, B] as a linear combination of generators; the reversed order is the negative.
_H1_TABLE = {
    (NUMBER, LOWER): [(-1.0, LOWER)],
    (NUMBER, RAISE): [(1.0, RAISE)],
    (LOWER, RAISE): [(1.0, IDENTITY)],
}
_SU11_TABLE = {
    (J3, RAISE): [(1.0, RAISE)],
    (J3, LOWER): [(-1.0, LOWER)],
    (NUMBER, RAISE): [(1.0, RAISE)],
    (NUMBER, LOWER): [(-1.0, LOWER)],
    (RAISE, LOWER): [(-2.0, J3)],
}


def commutator(op_a, op_b, family) -> list[tuple[float, LadderOperator]]:
    """Expected value of [op_a, op_b] read from the algebra table."""
    family = get_family(family)
    a, b = _check_op(op_a, family), _check_op(op_b, family)
    table = _H1_TABLE if family.algebra == "h1" else _SU11_TABLE
    if (a, b) in table:
        return list(table[(a, b)])
    if (b, a) in table:
        return [(-coef, op) for coef, op in table[(b, a)]]
    # identity, equal pairs and (N, J3) commute
    return []


def commutator_defect(op_a, op_b, v: CoefficientVector) -> float:
    """Max-norm of ([A, B] - expected) v over the interior indices 1..N-1."""
    if v.n_max < 2:
        raise ValueError("commutator_defect needs n_max >= 2")
    expected = commutator(op_a, op_b, v.family)
    ab = apply(op_a, apply(op_b, v))
    ba = apply(op_b, apply(op_a, v))
    terms = [(1.0, ab), (-1.0, ba)] + [(-coef, apply(op, v)) for coef, op in expected]
    diff = _combine(*terms)
    return float(np.max(np.abs(diff[1 : v.n_max])))


def casimir_apply(v: CoefficientVector) -> CoefficientVector:
    """C v with C = {a, a+} - 2(N + 1/2) for h(1) and J3^2 - {J+, J-}/2 for su(1,1).

    Both orderings of the anticommutator are evaluated on the grown
    intermediate vectors and only then truncated back, so every e_n with
    n <= N is mapped exactly.
    """
    up_down = apply(RAISE, apply(LOWER, v))
    down_up = apply(LOWER, apply(RAISE, v))
    if v.family.algebra == "h1":
        terms = [(1.0, up_down), (1.0, down_up), (-2.0, apply(NUMBER, v)), (-1.0, v)]
    else:
        j3 = apply(J3, v)
        terms = [(1.0, apply(J3, j3)), (-0.5, up_down), (-0.5, down_up)]
    return CoefficientVector(v.family, _combine(*terms)[: v.coeffs.size])


def differential_ladder_eval(family, op, n: int, x: float) -> float:
    """Differential realisation of Lower/Raise applied to the n-th function at x.

    Hermite and Laguerre act on the basis functions K_n and M_n; the Legendre
    operators act on the raw polynomial P_n::

        hermite   a  = (x + d/dx) / sqrt(2)         a+ = (x - d/dx) / sqrt(2)
        laguerre  J- = -x d/dx + n - x/2            J+ = x d/dx + n + 1 - x/2
        legendre  J- = (1 - x^2) d/dx + x n         J+ = -(1 - x^2) d/dx + x (n + 1)
    """
    family = get_family(family)
    op = _check_op(op, family)
    if op not in (LOWER, RAISE):
        raise ValueError("differential realisation is defined for Lower and Raise only")
    if not family.contains(x, closed=False):
        raise ValueError(f"x = {x} is not interior to the {family.name} interval")
    x = float(x)
    phi = float(basis_table(family, n, x)[n])
    dphi = float(basis_derivative_table(family, n, x)[n])
    sign = 1.0 if op is LOWER else -1.0
    if family.kind is Kind.HERMITE:
        return (x * phi + sign * dphi) / math.sqrt(2.0)
    if family.kind is Kind.LAGUERRE:
        if op is LOWER:
            return -x * dphi + (n - 0.5 * x) * phi
        return x * dphi + (n + 1 - 0.5 * x) * phi
    # back to the raw polynomial: phi_n = sqrt(n + 1/2) P_n
    scale = math.sqrt(n + 0.5)
    p, dp = phi / scale, dphi / scale
    if op is LOWER:
        return (1.0 - x * x) * dp + x * n * p
    return -(1.0 - x * x) * dp + x * (n + 1) * p


def raw_derivatives(family, n: int, x: float) -> tuple[float, float, float]:
    """(p_n, p_n', p_n'') of the raw polynomial at an interior x.

    Derivatives come from the lowering relations, applied twice:
    H_n' = 2n H_{n-1};  x L_n' = n (L_n - L_{n-1});  (1 - x^2) P_n' = n (P_{n-1} - x P_n).
    """
    family = get_family(family)
    if not family.contains(x, closed=False):
        raise ValueError(f"x = {x} is not interior to the {family.name} interval")
    x = float(x)
    p = raw_table(family, n, x)

    def at(k):
        return float(p[k]) if k >= 0 else 0.0

    kind = family.kind
    if kind is Kind.HERMITE:
        return at(n), 2 * n * at(n - 1), 4 * n * (n - 1) * at(n - 2)
    if kind is Kind.LAGUERRE:
        if x < ENDPOINT_GUARD:
            raise ValueError("Laguerre ladder derivatives need x away from 0")

        def d1(k):
            return k * (at(k) - at(k - 1)) / x if k > 0 else 0.0

        d = d1(n)
        return at(n), d, (n * (d - d1(n - 1)) - d) / x
    s = 1.0 - x * x
    if s < ENDPOINT_GUARD:
        raise ValueError("Legendre ladder derivatives need x away from +-1")

    def d1(k):
        return k * (at(k - 1) - x * at(k)) / s if k > 0 else 0.0

    d = d1(n)
    return at(n), d, (2 * x * d + n * (d1(n - 1) - at(n) - x * d)) / s


def ode_residual(family, n: int, x: float) -> float:
    """Normalised pointwise residual of the defining differential equation.

    H'' - 2x H' + 2n H, x L'' + (1 - x) L' + n L, (1 - x^2) P'' - 2x P' + n(n+1) P,
    divided by max(1, largest term magnitude).
    """
    family = get_family(family)
    p, d1, d2 = raw_derivatives(family, n, x)
    if family.kind is Kind.HERMITE:
        terms = (d2, -2 * x * d1, 2 * n * p)
    elif family.kind is Kind.LAGUERRE:
        terms = (x * d2, (1 - x) * d1, n * p)
    else:
        terms = ((1 - x * x) * d2, -2 * x * d1, n * (n + 1) * p)
    scale = max(1.0, *(abs(t) for t in terms))
    return abs(math.fsum(terms)) / scale
