"""Tests for exact, randomized and spectral expansion measurements."""

import math
from fractions import Fraction

import pytest

from cochains.cochain import Cochain
from cochains.spaces import CochainSpace
from complexes.generators import complete_complex
from complexes.simplicial import SimplicialComplex
from errors import BudgetExceeded, GroupError, PreconditionError
from expansion import (
    COBOUNDARY,
    COSYSTOLIC,
    edge_expansion,
    h_exhaustive,
    h_randomized,
    random_upper_bound_experiment,
    second_eigenvalue_power,
    spectral_certificate,
    upper_bound_epsilon,
    verify_partition_mass,
    witness_ratio,
)
from expansion.spectral import complete_graph_second_eigenvalue


@pytest.mark.parametrize("n, expected", [(4, Fraction(4, 3)), (5, Fraction(3, 2))])
def test_vertex_expansion_of_complete_graphs(z2, n, expected):
    report = h_exhaustive(complete_complex(n, 1), 0, z2)

    assert report.value == expected
    assert report.exact
    assert not report.nontrivial_cohomology
    assert report.cosystolic_value == expected


@pytest.mark.parametrize("n", [5, 6])
def test_complete_complexes_are_edge_coboundary_expanders(z2, n):
    report = h_exhaustive(complete_complex(n, 2), 1, z2)

    assert report.exact
    assert not report.nontrivial_cohomology
    assert report.value >= 1


def test_witness_ratio_matches_reported_value(z2):
    report = h_exhaustive(complete_complex(5, 1), 0, z2)

    assert report.witness is not None
    assert witness_ratio(report.witness, CochainSpace.COBOUNDARIES) == report.value


def test_empty_face_level_has_constant_one(z2, triangle):
    report = h_exhaustive(triangle, -1, z2)

    assert report.value == 1


def test_disconnected_graph_has_zero_expansion_and_a_systole(z2):
    X = SimplicialComplex([[0, 1], [2, 3]], name="two-edges")

    report = h_exhaustive(X, 0, z2)

    assert report.value == 0
    assert report.nontrivial_cohomology
    assert report.systole == Fraction(1, 2)
    assert report.cosystolic_value == 2


def test_cosystolic_mode_ignores_cocycles(z2):
    X = SimplicialComplex([[0, 1], [2, 3]])

    report = h_exhaustive(X, 0, z2, mode=COSYSTOLIC)

    assert report.value == 2


def test_level_above_dimension_is_rejected(z2, triangle):
    with pytest.raises(PreconditionError):
        h_exhaustive(triangle, 1, z2)


def test_nonabelian_expansion_stops_at_level_one(s3):
    with pytest.raises(GroupError):
        h_exhaustive(complete_complex(4, 3), 2, s3)


def test_enumeration_budget_is_respected(z2, k6_2):
    with pytest.raises(BudgetExceeded):
        h_exhaustive(k6_2, 1, z2, budget=16)


def test_parallel_scan_matches_serial(z3):
    X = complete_complex(5, 1)

    serial = h_exhaustive(X, 0, z3, workers=1)
    parallel = h_exhaustive(X, 0, z3, workers=2)

    assert serial.value == parallel.value


def test_report_serializes_exact_value(z2):
    doc = h_exhaustive(complete_complex(4, 1), 0, z2).to_dict()

    assert doc["value_exact"] == "4/3"
    assert doc["value"] == pytest.approx(4 / 3)


# -- randomized ---------------------------------------------------------------------------


def test_randomized_never_beats_the_exact_constant(z2):
    X = complete_complex(5, 1)

    report = h_randomized(X, 0, z2, COBOUNDARY, trials=6, local_search_steps=5, seed=3)

    assert report.value is not None
    assert report.exact
    assert report.value >= Fraction(3, 2)
    assert report.seed == 3


def test_randomized_is_reproducible(z3):
    X = complete_complex(4, 1)

    first = h_randomized(X, 0, z3, trials=4, local_search_steps=3, seed=11)
    second = h_randomized(X, 0, z3, trials=4, local_search_steps=3, seed=11)

    assert first.value == second.value


def test_randomized_without_trials_reports_nothing(z2, triangle):
    report = h_randomized(triangle, 0, z2, trials=0)

    assert report.value is None
    assert not report.exact


# -- spectra ------------------------------------------------------------------------------


def test_spectral_certificate_of_complete_complex(k6_2):
    cert = spectral_certificate(k6_2, target=0.0)

    assert cert.lam == pytest.approx(complete_graph_second_eigenvalue(6))
    assert cert.passed
    assert len(cert.links) == 1 + 6


def test_disconnected_link_counts_as_one():
    cert = spectral_certificate(SimplicialComplex([[0, 1], [2, 3]]), target=0.5)

    assert cert.lam == 1.0
    assert not cert.passed


def test_power_iteration_agrees_with_eigensolver(k6_2):
    G = k6_2.skeleton_graph()

    assert second_eigenvalue_power(G) == pytest.approx(-0.2, abs=1e-6)


def test_edge_expansion_equals_vertex_expansion_over_z2(z2):
    X = complete_complex(4, 1)

    value, members = edge_expansion(X.skeleton_graph())

    assert value == pytest.approx(4 / 3)
    assert len(members) == 2


def test_partition_bound_does_not_apply_to_heavy_cuts():
    G = complete_complex(4, 1).skeleton_graph()

    check = verify_partition_mass(G, [[0, 1], [2, 3]], lam=0.5)

    assert check.crossing == pytest.approx(4 / 6)
    assert not check.applies
    assert check.holds


def test_partition_must_cover_the_graph():
    G = complete_complex(4, 1).skeleton_graph()

    with pytest.raises(PreconditionError):
        verify_partition_mass(G, [[0, 1]], lam=0.5)


# -- upper bound experiment -----------------------------------------------------------------


def test_upper_bound_epsilon(k6_2):
    assert upper_bound_epsilon(k6_2, 1) == pytest.approx(math.sqrt(8 * 6 / 15))


def test_upper_bound_experiment_flags_small_complexes(k6_2):
    report = random_upper_bound_experiment(k6_2, 1, trials=4, seed=0)

    assert "epsilon above 1/2" in report.flags
    assert not report.guarantee_applies
    assert 1 <= report.samples <= 4
    assert report.to_dict()["kind"] == "upper_bound"


def test_upper_bound_witness_is_a_cochain(k6_2):
    report = random_upper_bound_experiment(k6_2, 1, trials=2, seed=5, stop_when_achieved=False)

    assert report.samples == 2
    if report.witness is not None:
        assert isinstance(report.witness, Cochain)
        assert report.best_ratio >= 0


def test_upper_bound_is_reached_on_a_large_complete_graph():
    X = complete_complex(33, 1)

    report = random_upper_bound_experiment(X, 0, trials=100, seed=0)

    assert report.eps <= 0.5
    assert report.guarantee_applies
    assert report.achieved
    assert float(report.best_ratio) <= 1 + 8 * report.eps
