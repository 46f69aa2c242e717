from fractions import Fraction

import numpy as np
import pytest

from cochains import Cochain, coboundary, cyclic
from complexes import SimplicialComplex, complete_complex
from correction import (
    FaceFunction,
    down,
    down_matrix,
    down_power,
    heavy_cocycle_bound,
    n_walk,
    sample_n_walk,
    up,
    up_matrix,
    verify_heavy_cocycle,
    verify_key_inequality,
    verify_walk_inequality,
    walk_matrix,
)
from errors import PreconditionError
from expansion import h_exhaustive
from lattice import spherical_building


@pytest.fixture
def weighted():
    return SimplicialComplex([[0, 1, 2], [1, 2, 3], [0, 2, 3]],
                             weights=[Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)])


@pytest.mark.parametrize("k", [0, 1, 2])
def test_down_rows_are_averages(weighted, k):
    D = down_matrix(weighted, k)
    assert np.allclose(np.asarray(D.sum(axis=1)).ravel(), 1.0)


@pytest.mark.parametrize("k", [0, 1])
def test_up_is_the_adjoint_of_down(weighted, k):
    X = weighted
    D = down_matrix(X, k + 1).toarray()
    U = up_matrix(X, k).toarray()
    lhs = np.diag(X.probabilities(k)) @ D
    rhs = (np.diag(X.probabilities(k + 1)) @ U).T
    assert np.allclose(lhs, rhs)


@pytest.mark.parametrize("k, j", [(1, 0), (1, 1), (0, 0)])
def test_walk_rows_are_distributions(weighted, k, j):
    W = walk_matrix(weighted, k, j)
    assert np.allclose(np.asarray(W.sum(axis=1)).ravel(), 1.0)
    assert W.shape == (weighted.face_count(j), weighted.face_count(k))


def test_averaging_preserves_constants_and_means(weighted):
    rng = np.random.default_rng(0)
    f = FaceFunction(weighted, 1, rng.standard_normal(weighted.face_count(1)))

    assert np.allclose(down(FaceFunction.constant(weighted, 2, 3.0), 2).values, 3.0)
    assert down(f).mean() == pytest.approx(f.mean())
    assert up(f).mean() == pytest.approx(f.mean())
    assert n_walk(f, 0).level == 0


def test_down_power_bounds(weighted):
    assert down_power(weighted, 1, 2).shape == (1, weighted.face_count(1))
    with pytest.raises(PreconditionError):
        down_power(weighted, 1, 3)


def test_face_function_shape_is_checked(weighted):
    with pytest.raises(PreconditionError):
        FaceFunction(weighted, 0, [1.0, 2.0])


def test_sampled_walk_matches_the_matrix(k6_2):
    f = FaceFunction.indicator(k6_2, 1, np.arange(k6_2.face_count(1)) % 2 == 0)

    draws = sample_n_walk(f, 0, (0,), samples=4000, rng=np.random.default_rng(1))

    assert draws.mean() == pytest.approx(n_walk(f, 0)[(0,)], abs=0.05)


# -- verifiers ----------------------------------------------------------------------------


def test_walk_inequality_on_complete_complex(k6_2):
    report = verify_walk_inequality(k6_2, 0, 0, trials=16, seed=1)

    assert report.passed
    assert report.violations == 0
    assert report.min_generalized_eigenvalue is not None


@pytest.mark.parametrize("k, j", [(0, 0), (1, 0), (1, 1)])
def test_walk_inequality_holds_on_many_samples(k6_2, k, j):
    report = verify_walk_inequality(k6_2, k, j, trials=1000, seed=7)

    assert report.passed
    assert report.violations == 0


def test_walk_inequality_on_the_fano_building():
    report = verify_walk_inequality(spherical_building(3, 2), 0, 0, trials=1000, seed=7)

    assert report.passed
    assert report.violations == 0


def test_walk_inequality_needs_a_coface_level(k6_2):
    with pytest.raises(PreconditionError):
        verify_walk_inequality(k6_2, 2, 0)


def test_pointwise_inequality_with_given_link_constant(k6_2, z2):
    g = coboundary(Cochain(k6_2, 0, z2, [1, 0, 0, 0, 0, 0]))

    report = verify_key_inequality(g, 1, beta_link=Fraction(3, 2))

    assert report.passed
    assert len(report.checks) == 6


def test_pointwise_inequality_computes_link_constants(k6_2, z2):
    g = coboundary(Cochain(k6_2, 0, z2, [1, 1, 1, 0, 0, 0]))

    report = verify_key_inequality(g, Fraction(1, 5))

    assert report.passed
    assert {check.beta for check in report.checks} == {Fraction(3, 2)}
    assert report.aggregate[0]["holds"]


def test_pointwise_inequality_needs_a_minimal_cocycle(k6_2, z2):
    f = Cochain(k6_2, 0, z2, [1, 1, 1, 0, 0, 0])
    with pytest.raises(PreconditionError):
        verify_key_inequality(f, 1)
    with pytest.raises(PreconditionError):
        verify_key_inequality(coboundary(f), Fraction(1, 10))


def test_heavy_cocycle_bound_values():
    assert heavy_cocycle_bound(1, 0, 0, 1) == pytest.approx(0.5)
    with pytest.raises(PreconditionError):
        heavy_cocycle_bound([1, 1], 0, 0, 1)


def test_minimal_cut_cocycle_is_heavy(k6_2, z2):
    g = coboundary(Cochain(k6_2, 0, z2, [1, 1, 1, 0, 0, 0]))

    check = verify_heavy_cocycle(g, Fraction(1, 5), [Fraction(3, 2)], 0.0)

    assert check.weight == Fraction(9, 15)
    assert check.holds


def test_zero_cocycle_is_always_heavy_enough(k6_2, z2):
    check = verify_heavy_cocycle(Cochain.zeros(k6_2, 1, z2), Fraction(1, 2), 1, 0.0)
    assert check.holds


def test_link_of_vertex_has_known_constant():
    report = h_exhaustive(complete_complex(6, 2).link((0,)), 0, cyclic(2))
    assert report.value == Fraction(3, 2)
