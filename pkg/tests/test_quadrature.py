import math

import numpy as np
import pytest

from ortholie.families import HERMITE, LAGUERRE, LEGENDRE
from ortholie.quadrature import ConvergenceError, gauss_rule, jacobi_matrix, tridiagonal_eig
from ortholie.verification import check_gauss_exactness, exact_moment, gram_matrix


@pytest.mark.parametrize(
    "family, node, weight",
    [
        (LEGENDRE, 0.0, 2.0),
        # int exp(-x^2) dx over the line; mpmath composite rule on (-20, 20) gives 1.7724538509055160273
        (HERMITE, 0.0, 1.7724538509055160273),
        # first / zeroth moment of exp(-x) on the half-line
        (LAGUERRE, 1.0, 1.0),
    ],
)
def test_one_point_rules(family, node, weight):
    rule = gauss_rule(family, 1)
    assert rule.nodes.tolist() == pytest.approx([node], abs=1e-15)
    assert rule.weights.tolist() == pytest.approx([weight], rel=1e-15)
    assert rule.exact_degree == 1


def test_two_point_legendre_by_hand():
    rule = gauss_rule(LEGENDRE, 2)
    assert rule.nodes.tolist() == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], rel=1e-15)
    assert rule.weights.tolist() == pytest.approx([1.0, 1.0], rel=1e-14)


@pytest.mark.parametrize(
    "family, reference",
    [
        (HERMITE, np.polynomial.hermite.hermgauss),
        (LAGUERRE, np.polynomial.laguerre.laggauss),
        (LEGENDRE, np.polynomial.legendre.leggauss),
    ],
)
@pytest.mark.parametrize("m", [3, 10, 41])
def test_matches_numpy_rules(family, reference, m):
    rule = gauss_rule(family, m)
    x, w = reference(m)
    np.testing.assert_allclose(rule.nodes, x, rtol=1e-12, atol=1e-13)
    np.testing.assert_allclose(rule.weights, w, rtol=1e-10)


@pytest.mark.parametrize("family", [HERMITE, LAGUERRE, LEGENDRE])
def test_rule_invariants(family):
    rule = gauss_rule(family, 25)
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all(rule.weights > 0)
    assert np.all(family.contains(rule.nodes, closed=False))
    assert rule.exact_degree == 49


@pytest.mark.parametrize("family", [HERMITE, LEGENDRE])
def test_symmetric_rules_are_exactly_symmetric(family):
    for m in (7, 8):
        rule = gauss_rule(family, m)
        assert np.array_equal(rule.nodes, -rule.nodes[::-1])
        assert np.array_equal(rule.weights, rule.weights[::-1])


def test_moment_recursions():
    assert exact_moment(HERMITE, 0) == pytest.approx(math.sqrt(math.pi))
    assert exact_moment(HERMITE, 4) == pytest.approx(0.75 * math.sqrt(math.pi))
    assert exact_moment(HERMITE, 3) == 0.0
    assert exact_moment(LAGUERRE, 5) == 120.0
    assert exact_moment(LEGENDRE, 4) == pytest.approx(0.4)


@pytest.mark.parametrize("family", [HERMITE, LAGUERRE, LEGENDRE])
def test_gauss_exactness(family):
    check = check_gauss_exactness(family)
    assert check.passed, check


def test_scaled_weights_cancel_the_weight():
    rule = gauss_rule(LAGUERRE, 12)
    np.testing.assert_allclose(rule.scaled_weights * np.exp(-rule.nodes), rule.weights, rtol=1e-12)


def test_large_rule_scaled_weights_are_finite():
    rule = gauss_rule(LAGUERRE, 300)
    assert np.all(np.isfinite(rule.scaled_weights)) and np.all(rule.scaled_weights > 0)


@pytest.mark.parametrize("family", [HERMITE, LAGUERRE, LEGENDRE])
def test_gram_is_identity(family):
    g = gram_matrix(family, 40, m=41)
    assert np.abs(g - np.eye(41)).max() <= 1e-10


def test_tridiagonal_eig_against_dense_solver():
    rng = np.random.default_rng(2)
    d, e = rng.normal(size=12), rng.normal(size=11)
    vals, first = tridiagonal_eig(d, e)
    dense = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    ref_vals, ref_vecs = np.linalg.eigh(dense)
    np.testing.assert_allclose(vals, ref_vals, atol=1e-13)
    np.testing.assert_allclose(first**2, ref_vecs[0] ** 2, atol=1e-13)


def test_tridiagonal_eig_respects_budget():
    d, e = jacobi_matrix(LAGUERRE, 30)
    with pytest.raises(ConvergenceError):
        tridiagonal_eig(d, e, max_sweeps=0)


def test_bad_size():
    with pytest.raises(ValueError):
        gauss_rule(HERMITE, 0)
