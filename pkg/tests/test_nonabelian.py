from fractions import Fraction

import pytest

from cochains import parse_group
from cones import (
    DIAMETER_BOUND,
    NonAbelianCone,
    build_nonabelian_cone,
    bt_reduce,
    check_triple_colors,
    verify_nonabelian_cone,
)
from errors import ConeConstructionError, SuitabilityError
from expansion import h_randomized
from lattice import BooleanLattice, LatticeView, SubspaceLattice, spherical_building


@pytest.fixture
def boolean_view():
    return LatticeView(BooleanLattice(4), [1, 2, 3])


def test_triple_color_rule():
    check_triple_colors([1, 2, 3])
    check_triple_colors([1, 2, 6])
    with pytest.raises(SuitabilityError):
        check_triple_colors([1, 2, 4])
    with pytest.raises(SuitabilityError):
        check_triple_colors([1, 2])


def test_boolean_cone_contracts_every_edge(boolean_view):
    cone = build_nonabelian_cone(boolean_view)
    check = verify_nonabelian_cone(cone)

    assert check.valid, check.violations
    assert len(cone.contractions) == 36
    assert 0 < check.diameter <= DIAMETER_BOUND
    assert cone.bound() == Fraction(1, check.diameter)


def test_contractions_end_at_the_apex(boolean_view):
    cone = build_nonabelian_cone(boolean_view)

    for edge in cone.contractions:
        loops = cone.contraction(*edge)
        assert bt_reduce(loops[-1]) == (cone.apex,)
        reverse = cone.contraction(edge[1], edge[0])
        assert reverse[0] == tuple(reversed(loops[0]))


def test_paths_start_at_the_apex(boolean_view):
    cone = build_nonabelian_cone(boolean_view)

    for u, path in cone.paths.items():
        assert path[0] == cone.apex and path[-1] == u
        assert len(path) <= 4


def test_selected_edges_only(boolean_view):
    edge = ((1, 0b0100), (3, 0b1110))

    cone = build_nonabelian_cone(boolean_view, edges=[edge])

    assert list(cone.contractions) == [edge]
    assert verify_nonabelian_cone(cone).valid


def test_non_edges_are_rejected(boolean_view):
    with pytest.raises(ConeConstructionError):
        build_nonabelian_cone(boolean_view, edges=[((1, 0b0001), (2, 0b0110))])


def test_cone_round_trips_through_json(boolean_view):
    cone = build_nonabelian_cone(boolean_view, workers=2)

    restored = NonAbelianCone.from_dict(cone.to_dict(), boolean_view)
    check = verify_nonabelian_cone(restored)

    assert check.valid
    assert check.diameter == cone.diameter()


def test_broken_path_is_reported(boolean_view):
    cone = build_nonabelian_cone(boolean_view)
    u = next(v for v, path in cone.paths.items() if len(path) > 2)
    cone.paths[u] = (cone.apex, u)

    check = verify_nonabelian_cone(cone)

    assert not check.valid
    assert any(str(u) in message for message in check.violations)


@pytest.fixture(scope="module")
def building_cone():
    return build_nonabelian_cone(LatticeView(SubspaceLattice(4, 2), [1, 2, 3]), workers=4)


@pytest.mark.slow
def test_building_cone(building_cone):
    check = verify_nonabelian_cone(building_cone)

    assert check.valid
    assert check.diameter <= DIAMETER_BOUND


@pytest.mark.slow
@pytest.mark.parametrize("group", ["Z2", "S3"])
def test_building_expansion_stays_above_the_cone_bound(building_cone, group):
    bound = building_cone.bound(k_top=2)

    report = h_randomized(spherical_building(4, 2), 1, parse_group(group),
                          trials=2, local_search_steps=3, seed=0)

    assert bound >= Fraction(1, DIAMETER_BOUND)
    assert report.value is not None
    assert report.value >= bound
