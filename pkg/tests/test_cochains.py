from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cochains import (
    Cochain,
    CochainSpace,
    GroupCSP,
    coboundary,
    cohomology_dimension,
    cyclic,
    distance_to_space,
    from_table,
    is_coboundary,
    is_cocycle,
    nearest_coboundary,
    parse_group,
    symmetric,
)
from cochains.solver import const, var
from complexes import complete_complex, random_complex
from errors import BudgetExceeded, CochainError, GroupError, PreconditionError


def test_cyclic_and_symmetric_groups():
    z3 = cyclic(3)
    assert z3.order == 3 and z3.is_abelian
    assert z3.mul(2, 2) == 1 and z3.inv(1) == 2
    s3 = symmetric(3)
    assert s3.order == 6 and not s3.is_abelian
    assert all(s3.mul(a, s3.inv(a)) == 0 for a in range(6))


def test_parse_group_products():
    g = parse_group("Z2xZ2")
    assert g.order == 4 and g.is_abelian
    assert all(g.mul(a, a) == 0 for a in range(4))
    assert parse_group("F3").prime_field == 3
    with pytest.raises(GroupError):
        parse_group("F4")
    with pytest.raises(GroupError):
        parse_group("Q8")


def test_invalid_tables_are_rejected():
    with pytest.raises(GroupError, match="identity"):
        from_table([[1, 0], [0, 1]])
    with pytest.raises(GroupError, match="Latin"):
        from_table([[0, 1, 2], [1, 1, 0], [2, 0, 1]])


def test_orientation_flips_to_the_inverse(z3):
    X = complete_complex(3, 1)
    f = Cochain(X, 1, z3, [1, 2, 0])
    assert f[(0, 1)] == 1
    assert f.value((1, 0)) == 2
    assert f.value((2, 0)) == 1


def test_value_count_is_checked(z2):
    with pytest.raises(CochainError):
        Cochain(complete_complex(3, 1), 1, z2, [0, 1])
    with pytest.raises(CochainError):
        Cochain(complete_complex(3, 1), 1, z2, [0, 1, 2])


def test_coboundary_of_vertex_indicator(k6_2, z2):
    f = Cochain.from_function(k6_2, 0, z2, lambda face: int(face[0] < 3))
    df = coboundary(f)
    assert int(df.nonzero_mask().sum()) == 9
    assert df.weight() == Fraction(9, 15)


def test_non_abelian_edge_coboundary(s3):
    X = complete_complex(3, 1)
    h = Cochain(X, 0, s3, [1, 4, 0])
    dh = coboundary(h)
    assert dh[(0, 1)] == s3.mul(1, s3.inv(4))
    assert dh.value((1, 0)) == s3.mul(4, s3.inv(1))


def test_coboundary_above_dimension_raises(z2):
    with pytest.raises(PreconditionError):
        coboundary(Cochain.zeros(complete_complex(3, 1), 1, z2))


def test_pointwise_arithmetic_needs_abelian_group(s3):
    X = complete_complex(3, 1)
    f = Cochain.zeros(X, 1, s3)
    with pytest.raises(GroupError):
        f + f


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000), order=st.sampled_from([2, 3, 4, 6]))
def test_coboundary_squares_to_zero(seed, order):
    X = complete_complex(5, 3)
    g = Cochain.random(X, 1, cyclic(order), np.random.default_rng(seed))
    assert not np.any(coboundary(coboundary(g)).values)


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10_000), name=st.sampled_from(["Z2", "Z3", "Z4", "Z2xZ2", "S3"]),
       d=st.integers(2, 3), count=st.integers(1, 12))
def test_coboundary_squares_to_identity_on_random_complexes(seed, name, d, count):
    X = random_complex(6, d, count, seed)
    group = parse_group(name)
    rng = np.random.default_rng(seed)
    top = d - 1 if group.is_abelian else min(d - 1, 1)
    for level in range(0, top):
        g = Cochain.random(X, level, group, rng)
        assert not np.any(coboundary(coboundary(g)).values)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_non_abelian_coboundary_squares_to_identity(seed):
    X = complete_complex(4, 2)
    h = Cochain.random(X, 0, symmetric(3), np.random.default_rng(seed))
    dh = coboundary(h)
    assert not np.any(coboundary(dh).values)
    for a, b, c in [(0, 1, 2), (2, 1, 0), (1, 3, 2)]:
        assert coboundary(dh).value((a, b, c)) == 0


def test_cohomology_of_sphere_and_cycle(z2):
    sphere = complete_complex(4, 2)
    assert cohomology_dimension(sphere, 1, z2) == 0
    assert cohomology_dimension(sphere, 2, z2) == 1
    assert cohomology_dimension(complete_complex(3, 1), 1, z2) == 1


def test_nearest_coboundary_recovers_planted(z3):
    X = complete_complex(5, 2)
    g = Cochain.random(X, 0, z3, np.random.default_rng(4))
    result = nearest_coboundary(coboundary(g))
    assert result.distance == 0
    assert result.exact
    assert coboundary(result.preimage) == coboundary(g)


def test_single_flip_is_one_edge_away(z2):
    X = complete_complex(4, 2)
    g = Cochain(X, 0, z2, [1, 0, 1, 0])
    values = coboundary(g).values.copy()
    values[0] ^= 1
    f = Cochain(X, 1, z2, values)
    assert not is_coboundary(f)
    assert distance_to_space(f, CochainSpace.COBOUNDARIES).distance == Fraction(1, 6)
    assert nearest_coboundary(f).distance == Fraction(1, 6)


def test_search_fallback_breaks_ties_like_enumeration(triangle, z2):
    f = Cochain(triangle, 1, z2, [1, 1, 1])

    enumerated = distance_to_space(f, CochainSpace.COBOUNDARIES)
    searched = distance_to_space(f, CochainSpace.COBOUNDARIES, budget=1)

    assert enumerated.witness.values.tolist() == [0, 1, 1]
    assert searched.witness == enumerated.witness
    assert searched.distance == Fraction(1, 3)
    assert nearest_coboundary(f, lexicographic=True).witness.values.tolist() == [0, 1, 1]


def test_cocycle_and_coboundary_checks(z2):
    X = complete_complex(4, 2)
    dg = coboundary(Cochain(X, 0, z2, [1, 1, 0, 0]))
    assert is_cocycle(dg)
    assert is_coboundary(dg)


def test_enumeration_budget(z2):
    f = Cochain.zeros(complete_complex(6, 2), 1, z2)
    with pytest.raises(BudgetExceeded) as info:
        distance_to_space(f, CochainSpace.COCYCLES, budget=16)
    assert info.value.budget == 16


def test_group_csp_solves_a_cycle(z3):
    # x0 - x1 = 1, x1 - x2 = 1, x2 - x0 = 1 over Z3 is satisfiable
    constraints = [
        [var(0), var(1, True), const(1, True)],
        [var(1), var(2, True), const(1, True)],
        [var(2), var(0, True), const(1, True)],
    ]
    result = GroupCSP(z3, 3, constraints, [1, 1, 1], fixed={0: 0}).solve()
    assert result.cost == 0 and result.exact
    assert result.assignment == (0, 2, 1)


def test_serialization(z3):
    X = complete_complex(3, 1)
    f = Cochain(X, 1, z3, [1, 2, 0])
    assert Cochain.from_dict(f.to_dict(), X) == f
