"""Numerical invariant suites for every module.

Each check returns a :class:`Check` holding the measured residual and its
threshold. Random points and vectors come from a seeded generator, so a run
is fully deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import io as tio
from .coherent import CoherentParameter, coherent_closed_form, coherent_coefficients, coherent_eval, tail_bound
from .families import (
    FAMILIES,
    HERMITE,
    LAGUERRE,
    LEGENDRE,
    Kind,
    basis_derivative_table,
    basis_table,
    get_family,
    raw_table,
)
from .ladder import (
    IDENTITY,
    J3,
    LOWER,
    NUMBER,
    RAISE,
    CoefficientVector,
    apply,
    basis_vector,
    casimir_apply,
    commutator_defect,
    differential_ladder_eval,
    ode_residual,
)
from .quadrature import default_quad_size, gauss_rule
from .transform import analyze, analyze_samples, parseval_residual, synthesize

__all__ = ["Check", "SUITES", "run_suite", "run_all", "interior_points", "random_vector"]

FD_STEP = 1e-5


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.threshold)


def interior_points(family, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random points well inside the family interval, sorted."""
    family = get_family(family)
    lo, hi = {Kind.HERMITE: (-6.0, 6.0), Kind.LAGUERRE: (0.05, 30.0), Kind.LEGENDRE: (-0.999, 0.999)}[family.kind]
    return np.sort(rng.uniform(lo, hi, count))


def random_vector(family, n_max: int, rng: np.random.Generator, support=None) -> CoefficientVector:
    """Unit-norm complex vector, optionally supported on ``support`` indices only."""
    c = rng.normal(size=n_max + 1) + 1j * rng.normal(size=n_max + 1)
    if support is not None:
        mask = np.zeros(n_max + 1, dtype=bool)
        mask[support] = True
        c[~mask] = 0.0
    return CoefficientVector(family, c / np.linalg.norm(c))


def _rng(seed, salt):
    return np.random.default_rng([seed, salt])


# family-core


def check_recurrence_vs_direct(family, rng, n_max=60, count=50) -> Check:
    """Stable basis recurrence against normalisation * raw polynomial."""
    family = get_family(family)
    x = interior_points(family, count, rng)
    phi = basis_table(family, n_max, x)
    raw = raw_table(family, n_max, x)
    n = np.arange(n_max + 1)
    if family.kind is Kind.HERMITE:
        norm = np.array([1.0 / math.sqrt(2.0**k * math.factorial(k) * math.sqrt(math.pi)) for k in n])
        direct = norm[:, None] * np.exp(-0.5 * x * x) * raw
    elif family.kind is Kind.LAGUERRE:
        direct = np.exp(-0.5 * x) * raw
    else:
        direct = np.sqrt(n + 0.5)[:, None] * raw
    ok = np.isfinite(direct) & (direct != 0)
    rel = np.abs(phi[ok] - direct[ok]) / np.abs(direct[ok])
    return Check(f"family.recurrence_vs_direct.{family.name}", float(rel.max()), 1e-10)


def check_parity(family, rng, n_max=60, count=50) -> Check:
    family = get_family(family)
    x = interior_points(family, count, rng)
    sign = (-1.0) ** np.arange(n_max + 1)
    diff = basis_table(family, n_max, -x) - sign[:, None] * basis_table(family, n_max, x)
    return Check(f"family.parity.{family.name}", float(np.abs(diff).max()), 1e-15)


def check_derivative_fd(family, rng, n_max=20, count=20) -> Check:
    """Ladder derivative against a fourth-order central difference with step 1e-5."""
    family = get_family(family)
    x = interior_points(family, count, rng)
    h = FD_STEP

    def f(t):
        return basis_table(family, n_max, t)

    fd = (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12.0 * h)
    err = np.abs(fd - basis_derivative_table(family, n_max, x)).max()
    return Check(f"family.derivative_fd.{family.name}", float(err), 1e-6)


def check_endpoint_values(n_max=60) -> list[Check]:
    p1 = raw_table(LEGENDRE, n_max, 1.0)
    l0 = raw_table(LAGUERRE, n_max, 0.0)
    return [
        Check("family.endpoint.legendre_P_n(1)=1", float(np.abs(p1 - 1.0).max()), 1e-15),
        Check("family.endpoint.laguerre_L_n(0)=1", float(np.abs(l0 - 1.0).max()), 1e-15),
    ]


def family_suite(seed=0, **_) -> list[Check]:
    checks = []
    for i, fam in enumerate(FAMILIES):
        checks.append(check_recurrence_vs_direct(fam, _rng(seed, 10 + i)))
        if fam.kind is not Kind.LAGUERRE:
            checks.append(check_parity(fam, _rng(seed, 20 + i)))
        checks.append(check_derivative_fd(fam, _rng(seed, 30 + i)))
    return checks + check_endpoint_values()


# ladder-algebra


def ladder_prediction(family, op, n: int, x: np.ndarray) -> np.ndarray:
    """What the coefficient-space action predicts for the differential realisation.

    Hermite and Laguerre: synthesize(apply(op, e_n)). Legendre: the
    differential operators act on raw P_n, so the prediction is n P_{n-1}
    or (n + 1) P_{n+1}.
    """
    family = get_family(family)
    if family.kind is Kind.LEGENDRE:
        p = raw_table(family, n + 1, x)
        if op is RAISE:
            return (n + 1) * p[n + 1]
        return n * p[n - 1] if n > 0 else np.zeros_like(x)
    image = apply(op, basis_vector(family, n))
    return synthesize(image, x).values.real


def check_differential_vs_coefficient(family, rng, n_max=25, count=30) -> Check:
    family = get_family(family)
    x = interior_points(family, count, rng)
    worst = 0.0
    for op in (LOWER, RAISE):
        for n in range(n_max + 1):
            direct = np.array([differential_ladder_eval(family, op, n, t) for t in x])
            worst = max(worst, float(np.abs(direct - ladder_prediction(family, op, n, x)).max()))
    return Check(f"ladder.differential_vs_coefficient.{family.name}", worst, 1e-8)


def algebra_pairs(family):
    family = get_family(family)
    if family.algebra == "h1":
        return [(NUMBER, LOWER), (NUMBER, RAISE), (LOWER, RAISE), (IDENTITY, LOWER), (IDENTITY, RAISE)]
    return [(J3, RAISE), (J3, LOWER), (RAISE, LOWER), (NUMBER, RAISE), (NUMBER, LOWER), (IDENTITY, J3)]


def check_commutators(family, rng, n_max=50) -> list[Check]:
    family = get_family(family)
    v = random_vector(family, n_max, rng, support=np.arange(1, n_max))
    return [
        Check(f"ladder.commutator.{family.name}.[{a.value},{b.value}]", commutator_defect(a, b, v), 1e-12)
        for a, b in algebra_pairs(family)
    ]


def check_casimir(family, rng, n_max=50) -> list[Check]:
    family = get_family(family)
    v = random_vector(family, n_max, rng)
    err_random = np.abs(casimir_apply(v).coeffs - family.casimir_value * v.coeffs).max()
    err_basis = max(
        np.abs(casimir_apply(basis_vector(family, n, n_max)).coeffs - family.casimir_value * basis_vector(family, n, n_max).coeffs).max()
        for n in range(n_max + 1)
    )
    return [
        Check(f"ladder.casimir.{family.name}.random", float(err_random), 1e-10),
        Check(f"ladder.casimir.{family.name}.basis", float(err_basis), 1e-10),
    ]


def check_adjoint(family, rng, n_max=50) -> Check:
    family = get_family(family)
    support = np.arange(n_max)
    u = random_vector(family, n_max, rng, support)
    v = random_vector(family, n_max, rng, support)
    lhs = np.vdot(u.resized(n_max + 1).coeffs, apply(RAISE, v).coeffs)
    rhs = np.vdot(apply(LOWER, u).coeffs, v.coeffs)
    return Check(f"ladder.adjoint.{family.name}", float(abs(lhs - rhs)), 1e-12)


def check_ode(family, rng, n_max=25, count=30) -> Check:
    family = get_family(family)
    x = interior_points(family, count, rng)
    worst = max(ode_residual(family, n, t) for n in range(n_max + 1) for t in x)
    return Check(f"ladder.ode_residual.{family.name}", float(worst), 1e-7)


def ladder_suite(seed=0, n_max=50, **_) -> list[Check]:
    checks = []
    for i, fam in enumerate(FAMILIES):
        checks.append(check_differential_vs_coefficient(fam, _rng(seed, 40 + i)))
        checks += check_commutators(fam, _rng(seed, 50 + i), n_max)
        checks += check_casimir(fam, _rng(seed, 60 + i), n_max)
        checks.append(check_adjoint(fam, _rng(seed, 70 + i), n_max))
        checks.append(check_ode(fam, _rng(seed, 80 + i)))
    return checks


# spectral-transform


def exact_moment(family, k: int) -> float:
    """int x^k W(x) dx by closed-form recursion."""
    family = get_family(family)
    if family.kind is Kind.LAGUERRE:
        return float(math.factorial(k))
    if k % 2:
        return 0.0
    if family.kind is Kind.LEGENDRE:
        return 2.0 / (k + 1)
    # Gamma((k+1)/2) via Gamma(s+1) = s Gamma(s) from Gamma(1/2) = sqrt(pi)
    value = math.sqrt(math.pi)
    for j in range(1, k // 2 + 1):
        value *= j - 0.5
    return value


def check_gauss_exactness(family, max_m=30) -> Check:
    family = get_family(family)
    worst = 0.0
    for m in range(1, max_m + 1):
        rule = gauss_rule(family, m)
        for k in range(2 * m):
            terms = rule.weights * rule.nodes**k
            got = math.fsum(terms)
            scale = max(abs(exact_moment(family, k)), math.fsum(np.abs(terms)))
            if scale > 0:
                worst = max(worst, abs(got - exact_moment(family, k)) / scale)
    return Check(f"transform.gauss_exactness.{family.name}", worst, 1e-11)


def gram_matrix(family, n_max=40, m=None) -> np.ndarray:
    family = get_family(family)
    rule = gauss_rule(family, default_quad_size(n_max) if m is None else m)
    phi = basis_table(family, n_max, rule.nodes)
    return (phi * rule.scaled_weights) @ phi.T


def check_gram(family, n_max=40) -> list[Check]:
    family = get_family(family)
    g = gram_matrix(family, n_max)
    off = np.abs(g - np.diag(np.diag(g))).max()
    diag = np.abs(np.diag(g) - 1.0).max()
    return [
        Check(f"transform.gram_offdiag.{family.name}", float(off), 1e-10),
        Check(f"transform.gram_diag.{family.name}", float(diag), 1e-10),
    ]


def _as_function(v: CoefficientVector):
    return lambda x: synthesize(v, [x]).values[0]


def check_analyze_synthesize(family, rng, n_max=30) -> Check:
    family = get_family(family)
    v = random_vector(family, n_max, rng)
    back = analyze(family, _as_function(v), n_max)
    return Check(f"transform.analyze_synthesize.{family.name}", float(np.abs(back.coeffs - v.coeffs).max()), 1e-10)


def parseval_cases(family):
    """(label, function, coefficient vector) triples for Parseval checks."""
    family = get_family(family)
    cases = []
    e4 = basis_vector(family, 4)
    cases.append(("basis4", _as_function(e4), e4))
    combo = CoefficientVector(family, [1 / math.sqrt(2), 1 / math.sqrt(2)])
    cases.append(("combination", _as_function(combo), combo))
    if family.algebra == "su11":
        p = CoherentParameter.su11(0.5 * np.exp(0.7j))
    else:
        p = CoherentParameter.h1(0.5 * np.exp(0.7j))
    c = coherent_coefficients(family, p, 60)
    cases.append(("coherent", _as_function(c), c))
    return cases


def check_parseval(family) -> list[Check]:
    family = get_family(family)
    checks = []
    for label, f, v in parseval_cases(family):
        coeffs = analyze(family, f, v.n_max)
        checks.append(Check(f"transform.parseval.{family.name}.{label}", parseval_residual(f, coeffs), 1e-10))
    return checks


def transform_suite(seed=0, **_) -> list[Check]:
    checks = []
    for i, fam in enumerate(FAMILIES):
        checks.append(check_gauss_exactness(fam))
        checks += check_gram(fam)
        checks.append(check_analyze_synthesize(fam, _rng(seed, 90 + i)))
        checks += check_parseval(fam)
    return checks


# coherent-states


def random_parameter(family, rng, radius) -> CoherentParameter:
    family = get_family(family)
    value = rng.uniform(0.0, radius) * np.exp(1j * rng.uniform(0.0, 2 * np.pi))
    return CoherentParameter(family.algebra, value)


def check_normalization(family, rng, count=20) -> Check:
    """1 - tail - ||c||^2 stays at rounding level; for su(1,1) |alpha| <= 0.9, N = 300."""
    family = get_family(family)
    worst = 0.0
    for _ in range(count):
        if family.algebra == "su11":
            p, n_max = random_parameter(family, rng, 0.9), 300
        else:
            p = random_parameter(family, rng, 2.0)
            n_max = int(abs(p.value) ** 2 + 12 * abs(p.value) + 30)
        norm2 = coherent_coefficients(family, p, n_max).norm2()
        worst = max(worst, abs(1.0 - tail_bound(p, n_max) - norm2), max(0.0, norm2 - 1.0))
    return Check(f"coherent.normalization.{family.name}", worst, 1e-12)


def check_eigenstate(rng, count=20) -> Check:
    worst = 0.0
    for _ in range(count):
        p = random_parameter(HERMITE, rng, 2.0)
        r = abs(p.value)
        n_max = math.ceil(r * r + 12 * r + 30)
        c = coherent_coefficients(HERMITE, p, n_max)
        lowered = apply(LOWER, c).coeffs[:n_max]
        worst = max(worst, float(np.abs(lowered - p.value * c.coeffs[:n_max]).max()))
    return Check("coherent.lowering_eigenvector.hermite", worst, 1e-10)


def check_su11_ratio(family, rng, count=20) -> Check:
    family = get_family(family)
    worst = 0.0
    for _ in range(count):
        p = random_parameter(family, rng, 0.9)
        c = coherent_coefficients(family, p, 60)
        shifted = apply(LOWER, c).coeffs[:-1]
        n = np.arange(1, 61)
        worst = max(
            worst,
            float(np.abs(shifted - n * c.coeffs[1:]).max()),
            float(np.abs(c.coeffs[1:] - p.value * c.coeffs[:-1]).max()),
        )
    return Check(f"coherent.su11_recurrence.{family.name}", worst, 1e-15)


def check_oracle(family, rng, count=50, n_max=400) -> Check:
    family = get_family(family)
    radius = 2.0 if family.algebra == "h1" else 0.8
    x = interior_points(family, count, rng)
    if family.kind is Kind.LAGUERRE:
        x = np.sort(rng.uniform(0.0, 15.0, count))
    worst = 0.0
    for t in x:
        p = random_parameter(family, rng, radius)
        worst = max(worst, abs(coherent_eval(family, p, t, n_max) - coherent_closed_form(family, p, t)))
    return Check(f"coherent.oracle.{family.name}", worst, 1e-9)


def check_laguerre_consistency(rng, count=20) -> Check:
    x = np.sort(rng.uniform(0.0, 15.0, count))
    worst = 0.0
    for t in x:
        p = random_parameter(LAGUERRE, rng, 0.8)
        vec = coherent_coefficients(LAGUERRE, p, 400)
        synthesized = synthesize(vec, [t]).values[0]
        worst = max(worst, abs(synthesized - math.exp(-0.5 * t) * coherent_eval(LAGUERRE, p, t, 400)))
    return Check("coherent.transform_consistency.laguerre", worst, 1e-9)


def coherent_suite(seed=0, **_) -> list[Check]:
    checks = []
    for i, fam in enumerate(FAMILIES):
        checks.append(check_normalization(fam, _rng(seed, 100 + i)))
        checks.append(check_oracle(fam, _rng(seed, 110 + i)))
        if fam.algebra == "su11":
            checks.append(check_su11_ratio(fam, _rng(seed, 120 + i)))
    checks.append(check_eigenstate(_rng(seed, 130)))
    checks.append(check_laguerre_consistency(_rng(seed, 131)))
    return checks


# serialization path used by the CLI


def check_text_roundtrip(family, n_max=12) -> Check:
    """Sampled CSV -> coefficient JSON -> CSV reproduces the samples."""
    family = get_family(family)
    v = CoefficientVector(family, [0.6, -0.3j, 0.0, 0.5, 0.2 + 0.1j] + [0.0] * (n_max - 4))
    grid = {Kind.HERMITE: (-15.0, 15.0, 4001), Kind.LAGUERRE: (0.0, 120.0, 12001), Kind.LEGENDRE: (-1.0, 1.0, 2001)}
    a, b, count = grid[family.kind]
    samples = synthesize(v, np.linspace(a, b, count))
    parsed = tio.grid_from_csv(tio.grid_to_csv(samples), family)
    coeffs = tio.coefficients_from_json(tio.coefficients_to_json(analyze_samples(parsed, n_max)))
    back = tio.grid_from_csv(tio.grid_to_csv(synthesize(coeffs, parsed.points)), family)
    return Check(f"cli.text_roundtrip.{family.name}", float(np.abs(back.values - samples.values).max()), 1e-9)


def cli_suite(**_) -> list[Check]:
    return [check_text_roundtrip(fam) for fam in FAMILIES]


SUITES = {
    "family": family_suite,
    "ladder": ladder_suite,
    "transform": transform_suite,
    "coherent": coherent_suite,
    "cli": cli_suite,
}


def run_suite(name: str, seed: int = 0, n_max: int = 50) -> list[Check]:
    return SUITES[name](seed=seed, n_max=n_max)


def run_all(seed: int = 0, n_max: int = 50) -> list[Check]:
    return list(itertools.chain.from_iterable(run_suite(name, seed, n_max) for name in SUITES))
