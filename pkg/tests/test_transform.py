import math

import numpy as np
import pytest

from ortholie.coherent import CoherentParameter, coherent_coefficients
from ortholie.families import FAMILIES, HERMITE, LAGUERRE, LEGENDRE, eval_basis
from ortholie.ladder import CoefficientVector, basis_vector
from ortholie.transform import analyze, analyze_samples, parseval_residual, synthesize
from ortholie.verification import check_analyze_synthesize, check_parseval, interior_points

# int K_0(x) exp(-x^2) dx = pi^(1/4) sqrt(2/3); mpmath composite Gauss rule on (-20, 20), 30 digits
GAUSSIAN_F0 = 1.08703077261118847846


def phi(family, n):
    return lambda x: eval_basis(family, n, x)


@pytest.mark.parametrize("family", FAMILIES)
def test_analyze_basis_function(family):
    v = analyze(family, phi(family, 2), 6)
    expected = np.zeros(7)
    expected[2] = 1.0
    assert np.abs(v.coeffs - expected).max() <= 1e-12


@pytest.mark.parametrize("family", FAMILIES)
def test_analyze_linear_combination(family):
    s = 1 / math.sqrt(2)
    v = analyze(family, lambda x: s * (eval_basis(family, 0, x) + eval_basis(family, 1, x)), 4)
    np.testing.assert_allclose(v.coeffs, [s, s, 0, 0, 0], atol=1e-12)


def test_analyze_gaussian_against_composite_oracle():
    v = analyze(HERMITE, lambda x: math.exp(-x * x), 0)
    assert v.coeffs[0].real == pytest.approx(GAUSSIAN_F0, abs=1e-10)
    assert v.coeffs[0].real == pytest.approx(math.pi**0.25 * math.sqrt(2 / 3), abs=1e-10)
    # more nodes resolve the non-polynomial factor to rounding
    assert analyze(HERMITE, lambda x: math.exp(-x * x), 0, m=30).coeffs[0].real == pytest.approx(GAUSSIAN_F0, abs=1e-15)


def test_analyze_rejects_non_finite_values():
    with pytest.raises(ValueError):
        analyze(LAGUERRE, lambda x: math.inf if x > 5 else 1.0, 2)


@pytest.mark.parametrize("family", FAMILIES)
def test_synthesize_single_term(family):
    x = interior_points(family, 6, np.random.default_rng(1))
    out = synthesize(basis_vector(family, 3), x)
    np.testing.assert_allclose(out.values.real, [eval_basis(family, 3, t) for t in x], rtol=1e-14, atol=1e-15)
    assert np.array_equal(out.points, x)


@pytest.mark.parametrize("family", FAMILIES)
def test_synthesize_zero(family):
    x = interior_points(family, 5, np.random.default_rng(2))
    assert not np.any(synthesize(CoefficientVector(family, [0, 0, 0]), x).values)


@pytest.mark.parametrize("family", FAMILIES)
def test_round_trip_phi5(family):
    v = analyze(family, phi(family, 5), 10)
    x = interior_points(family, 20, np.random.default_rng(3))
    out = synthesize(v, x)
    np.testing.assert_allclose(out.values.real, [eval_basis(family, 5, t) for t in x], atol=1e-10)


def test_synthesize_domain_error():
    with pytest.raises(ValueError):
        synthesize(basis_vector(LEGENDRE, 1), [0.0, 1.5])


@pytest.mark.parametrize("family", FAMILIES)
def test_analyze_synthesize_identity(family):
    check = check_analyze_synthesize(family, np.random.default_rng(4))
    assert check.passed, check


@pytest.mark.parametrize("family", FAMILIES)
def test_parseval(family):
    for check in check_parseval(family):
        assert check.passed, check


def test_parseval_example_values():
    e4 = basis_vector(LEGENDRE, 4)
    assert parseval_residual(phi(LEGENDRE, 4), analyze(LEGENDRE, phi(LEGENDRE, 4), 4)) <= 1e-12
    # both sides of the coherent case against the geometric series (1 - |a|^2) sum |a|^(2n)
    c = coherent_coefficients(LAGUERRE, CoherentParameter.su11(0.5), 60)
    geometric = 0.75 * sum(0.25**n for n in range(61))
    assert c.norm2() == pytest.approx(geometric, abs=1e-15)
    f = lambda x: synthesize(c, [x]).values[0]
    assert parseval_residual(f, analyze(LAGUERRE, f, 60)) <= 1e-10
    assert e4.norm2() == 1.0


def test_parseval_residual_sees_missing_coefficients():
    f = lambda x: (eval_basis(HERMITE, 0, x) + eval_basis(HERMITE, 5, x)) / math.sqrt(2)
    truncated = analyze(HERMITE, f, 3)
    assert parseval_residual(f, truncated) == pytest.approx(0.5, abs=1e-12)


def test_complex_values_pass_through():
    v = CoefficientVector(LEGENDRE, [0.3 - 0.2j, 0.0, 1j])
    back = analyze(LEGENDRE, lambda x: synthesize(v, [x]).values[0], 2)
    np.testing.assert_allclose(back.coeffs, v.coeffs, atol=1e-14)


@pytest.mark.parametrize("family", FAMILIES)
def test_analyze_dense_samples(family):
    v = CoefficientVector(family, [0.5, 0.0, -0.25j, 0.1])
    a, b, count = {"hermite": (-14, 14, 4001), "laguerre": (0, 100, 10001), "legendre": (-1, 1, 2001)}[family.name]
    samples = synthesize(v, np.linspace(a, b, count))
    back = analyze_samples(samples, 6)
    np.testing.assert_allclose(back.coeffs[:4], v.coeffs, atol=1e-9)
    np.testing.assert_allclose(back.coeffs[4:], 0, atol=1e-9)


def test_too_few_samples():
    samples = synthesize(basis_vector(LEGENDRE, 0), [-0.5, 0.0, 0.5])
    with pytest.raises(ValueError):
        analyze_samples(samples, 2)
