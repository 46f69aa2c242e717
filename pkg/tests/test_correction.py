from fractions import Fraction

import numpy as np
import pytest

from cochains import Cochain, coboundary, cyclic, is_cocycle, symmetric
from complexes import complete_complex, complete_partite_complex
from correction import as_eta, correct, is_locally_minimal
from errors import BudgetExceeded, GroupError, PreconditionError


@pytest.fixture
def three_vertices(k6_2, z2):
    """Indicator of {0, 1, 2} on K6's vertices."""
    return Cochain(k6_2, 0, z2, [1, 1, 1, 0, 0, 0])


def test_eta_parsing():
    assert as_eta("1/20") == Fraction(1, 20)
    assert as_eta(0.25) == Fraction(1, 4)
    assert as_eta(1) == 1
    for bad in (0, "-1/2", 2):
        with pytest.raises(PreconditionError):
            as_eta(bad)


def test_large_threshold_leaves_balanced_cut_alone(three_vertices):
    corrected, trace = correct(three_vertices, Fraction(1, 2))

    assert corrected == three_vertices
    assert trace.iterations == 0
    assert trace.replay()


def test_small_threshold_removes_the_coboundary(three_vertices):
    corrected, trace = correct(three_vertices, Fraction(1, 20))

    assert coboundary(corrected).weight() == 0
    assert trace.iterations > 0
    assert trace.final == corrected
    assert trace.replay()
    assert trace.distance_bound_holds()
    assert all(step.delta_wt >= trace.eta * step.star_mass for step in trace.steps)


def test_corrected_coboundary_is_locally_minimal(k6_2, z3):
    rng = np.random.default_rng(4)
    f = Cochain.random(k6_2, 1, z3, rng)
    eta = Fraction(1, 10)

    corrected, trace = correct(f, eta)

    assert is_locally_minimal(coboundary(corrected), eta).minimal
    assert trace.replay()
    assert trace.distance_bound_holds()


def test_nonabelian_edges_are_corrected(s3):
    X = complete_complex(5, 2)
    rng = np.random.default_rng(2)
    f = Cochain.random(X, 1, s3, rng)

    corrected, trace = correct(f, Fraction(1, 10))

    assert coboundary(corrected).weight() <= coboundary(f).weight()
    assert trace.replay()


@pytest.mark.slow
def test_random_triples_meet_the_correction_contracts():
    complexes = [complete_complex(4, 2), complete_complex(5, 2), complete_complex(6, 2),
                 complete_partite_complex([2, 2, 2])]
    groups = [cyclic(2), cyclic(3), symmetric(3)]
    etas = [Fraction(1, 20), Fraction(1, 10), Fraction(1, 5), Fraction(1, 2)]
    rng = np.random.default_rng(2024)

    for _ in range(100):
        X = complexes[rng.integers(len(complexes))]
        group = groups[rng.integers(len(groups))]
        k = int(rng.integers(2)) if group.is_abelian else 1
        eta = etas[rng.integers(len(etas))]
        f = Cochain.random(X, k, group, rng)

        corrected, trace = correct(f, eta)

        assert trace.replay()
        assert trace.distance_bound_holds()
        assert coboundary(corrected).weight() <= coboundary(f).weight()
        if group.is_abelian:
            assert is_locally_minimal(coboundary(corrected), eta).minimal


def test_correction_rejects_levels_without_cofaces(triangle, z2):
    with pytest.raises(PreconditionError):
        correct(Cochain.zeros(triangle, 1, z2), Fraction(1, 2))


def test_trace_serializes_steps(three_vertices):
    _, trace = correct(three_vertices, Fraction(1, 20))

    doc = trace.to_dict()

    assert doc["eta"] == pytest.approx(0.05)
    assert doc["iterations"] == len(doc["steps"])


# -- local minimality -------------------------------------------------------------------


def test_cut_coboundary_minimality_depends_on_eta(three_vertices):
    g = coboundary(three_vertices)

    loose = is_locally_minimal(g, Fraction(1, 10))
    assert not loose.minimal
    assert loose.face == (0,)
    assert loose.level == 0
    assert loose.improvement == Fraction(1, 5)

    assert is_locally_minimal(g, Fraction(1, 5)).minimal
    assert is_locally_minimal(g, Fraction(1, 2)).minimal


def test_zero_cochain_is_minimal(k6_2, z3):
    assert is_locally_minimal(Cochain.zeros(k6_2, 2, z3), Fraction(1, 100)).minimal


def test_star_coboundary_is_not_minimal(k6_2, z2):
    g = coboundary(Cochain(k6_2, 0, z2, [1, 0, 0, 0, 0, 0]))

    assert is_cocycle(g)
    result = is_locally_minimal(g, Fraction(1, 2))
    assert not result.minimal
    assert result.face == (0,)
    assert result.improvement == 1


def test_nonabelian_minimality_above_level_two_is_rejected(s3):
    X = complete_complex(5, 3)
    with pytest.raises(GroupError):
        is_locally_minimal(Cochain.zeros(X, 3, s3), Fraction(1, 2))


def test_unfinished_gauge_search_is_not_reported_minimal(k6_2, s3):
    # the transposition on (0, 1, 2) leaves a non-trivial cycle in the link of 0
    g = Cochain(k6_2, 2, s3, [1] + [0] * (k6_2.face_count(2) - 1))

    with pytest.raises(BudgetExceeded) as info:
        is_locally_minimal(g, 1, node_budget=1)
    assert info.value.budget == 1
