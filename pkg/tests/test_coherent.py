import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ortholie.coherent import (
    CoherentParameter,
    coherent_closed_form,
    coherent_coefficients,
    coherent_eval,
    default_n_max,
    hyperboloid_to_disk,
    tail_bound,
)
from ortholie.families import FAMILIES, HERMITE, LAGUERRE, LEGENDRE, eval_basis, eval_raw
from ortholie.ladder import LOWER, apply
from ortholie.transform import synthesize
from ortholie.verification import (
    check_eigenstate,
    check_laguerre_consistency,
    check_normalization,
    check_oracle,
    check_su11_ratio,
)

P = CoherentParameter


@pytest.mark.parametrize(
    "xi, theta, expected",
    [
        (0.0, 1.234, 0.0),
        (1.0, 0.0, 0.7615941559557649),  # tanh 1, mpmath
        (2.0, math.pi / 2, 0.9640275800758169j),  # i tanh 2, mpmath
    ],
)
def test_hyperboloid_to_disk(xi, theta, expected):
    assert abs(hyperboloid_to_disk(xi, theta) - expected) <= 1e-15


def test_hyperboloid_parameter_consistency():
    p = P.from_hyperboloid(0.8, 2.0)
    assert abs(p.value - cmath.exp(2j) * math.tanh(0.8)) <= 1e-14
    assert P.from_dict(p.to_dict()) == p
    with pytest.raises(ValueError):
        P("su11", 0.1, xi=0.8, theta=2.0)
    with pytest.raises(ValueError):
        hyperboloid_to_disk(-1.0, 0.0)


def test_su11_parameter_must_be_in_disk():
    with pytest.raises(ValueError):
        P.su11(1.0)
    with pytest.raises(ValueError):
        P.su11(0.8 + 0.7j)
    P.h1(5.0 + 5.0j)


def test_family_algebra_mismatch():
    with pytest.raises(ValueError):
        coherent_coefficients(HERMITE, P.su11(0.2))
    with pytest.raises(ValueError):
        coherent_coefficients(LEGENDRE, P.h1(0.2))


def test_ground_states():
    c = coherent_coefficients(HERMITE, P.h1(0), 5)
    assert c.coeffs.tolist() == [1, 0, 0, 0, 0, 0]
    assert coherent_coefficients(LAGUERRE, P.su11(0), 4).coeffs.tolist() == [1, 0, 0, 0, 0]
    assert coherent_coefficients(LAGUERRE, P.su11(0)).n_max == 0


def test_legendre_half():
    c = coherent_coefficients(LEGENDRE, P.su11(0.5), 60)
    np.testing.assert_allclose(c.coeffs, math.sqrt(0.75) * 0.5 ** np.arange(61), rtol=1e-15)
    assert c.norm2() == pytest.approx(1 - 0.5**122, abs=1e-15)
    assert tail_bound(P.su11(0.5), 60) == 0.5**122


def test_h1_tail_bound_is_the_missing_norm():
    p = P.h1(1.5 - 0.5j)
    for n_max in (3, 10, 25):
        c = coherent_coefficients(HERMITE, p, n_max)
        assert 1 - c.norm2() == pytest.approx(tail_bound(p, n_max), abs=1e-15)


@pytest.mark.parametrize("p", [P.su11(0.5), P.su11(0.95j), P.h1(2.0), P.h1(0.3 + 3j)])
def test_default_truncation_meets_target(p):
    n = default_n_max(p)
    assert tail_bound(p, n) <= 1e-24
    assert n == 0 or tail_bound(p, n - 1) > 1e-24


def test_coherent_eval_examples():
    assert coherent_eval(LAGUERRE, P.su11(0.5), 0.0, 120) == pytest.approx(math.sqrt(3), abs=1e-14)
    assert coherent_eval(LEGENDRE, P.su11(0.3), 1.0, 120) == pytest.approx(math.sqrt(0.91) / 0.7, abs=1e-14)
    assert coherent_eval(HERMITE, P.h1(0), 0.4) == pytest.approx(eval_basis(HERMITE, 0, 0.4), abs=1e-16)


def test_coherent_eval_default_truncation_is_accurate():
    assert coherent_eval(LAGUERRE, P.su11(0.5), 0.0) == pytest.approx(math.sqrt(3), abs=1e-11)


# brute-force truncated sums at N = 200, evaluated with mpmath at 30 digits
@pytest.mark.parametrize(
    "family, p, x, expected",
    [
        (LAGUERRE, P.su11(0.5), 0.0, 1.73205080756887729352744634151),
        (LEGENDRE, P.su11(0.3), 1.0, 1.36277028773849378616635935445),
        (LEGENDRE, P.su11(0.0), 0.37, 1.0),
    ],
)
def test_closed_form_examples(family, p, x, expected):
    assert coherent_closed_form(family, p, x) == pytest.approx(expected, abs=1e-14)


def _brute(family, p, x, n_max=200):
    """Term-by-term sum with the scalar evaluators; independent of the vectorised tables."""
    total = 0j
    for n in range(n_max + 1):
        if family is HERMITE:
            c = cmath.exp(-0.5 * abs(p.value) ** 2) * p.value**n / math.sqrt(math.factorial(n))
            total += c * eval_basis(family, n, x)
        else:
            total += math.sqrt(1 - abs(p.value) ** 2) * p.value**n * eval_raw(family, n, x)
    return total


@pytest.mark.parametrize("family", FAMILIES)
def test_closed_form_against_brute_force(family):
    rng = np.random.default_rng(11)
    for _ in range(20):
        radius = 2.0 if family is HERMITE else 0.8
        value = rng.uniform(0, radius) * np.exp(2j * np.pi * rng.uniform())
        p = P(family.algebra, value)
        x = {"hermite": rng.uniform(-4, 4), "laguerre": rng.uniform(0, 10), "legendre": rng.uniform(-1, 1)}[family.name]
        n_max = 120 if family is HERMITE else 200
        assert abs(coherent_closed_form(family, p, x) - _brute(family, p, x, n_max)) <= 1e-9


@pytest.mark.parametrize("family", FAMILIES)
def test_oracle_agreement(family):
    check = check_oracle(family, np.random.default_rng(12))
    assert check.passed, check


@pytest.mark.parametrize("family", FAMILIES)
def test_normalization(family):
    check = check_normalization(family, np.random.default_rng(13))
    assert check.passed, check


def test_su11_norm_interval():
    for r in (0.1, 0.5, 0.9):
        for fam in (LAGUERRE, LEGENDRE):
            norm2 = coherent_coefficients(fam, P.su11(r * cmath.exp(0.3j)), 300).norm2()
            assert 1 - 1e-12 <= norm2 <= 1


@pytest.mark.parametrize("family", [LAGUERRE, LEGENDRE])
def test_su11_recurrence(family):
    assert check_su11_ratio(family, np.random.default_rng(14)).passed


def test_lowering_eigenvector():
    assert check_eigenstate(np.random.default_rng(15)).passed


@settings(max_examples=30, deadline=None)
@given(r=st.floats(0, 2), angle=st.floats(0, 2 * math.pi))
def test_lowering_eigenvector_property(r, angle):
    z = r * cmath.exp(1j * angle)
    n_max = math.ceil(r * r + 12 * r + 30)
    c = coherent_coefficients(HERMITE, P.h1(z), n_max)
    lowered = apply(LOWER, c).coeffs[:n_max]
    assert np.abs(lowered - z * c.coeffs[:n_max]).max() <= 1e-10


def test_laguerre_vector_and_polynomial_agree():
    assert check_laguerre_consistency(np.random.default_rng(16)).passed
    p = P.su11(0.4 - 0.3j)
    c = coherent_coefficients(LAGUERRE, p, 300)
    x = 2.5
    assert synthesize(c, [x]).values[0] == pytest.approx(math.exp(-x / 2) * coherent_eval(LAGUERRE, p, x, 300), abs=1e-12)


def test_legendre_polynomial_is_not_the_normalised_vector():
    # P_alpha sums raw P_n; the coherent vector carries sqrt(n + 1/2)
    p = P.su11(0.5)
    c = coherent_coefficients(LEGENDRE, p, 200)
    assert abs(synthesize(c, [0.2]).values[0] - coherent_eval(LEGENDRE, p, 0.2, 200)) > 0.1
