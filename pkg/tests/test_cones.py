from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cones import (
    Cone,
    IntegerChain,
    bt_equivalent,
    bt_reduce,
    build_cone,
    chain_from_walk,
    check_walk,
    compose,
    empty_chain,
    inverse,
    is_bt_trivial,
    tr_step,
    verify_cone,
)
from errors import ChainError, LoopError, SuitabilityError
from expansion import cone_to_bound, h_exhaustive
from lattice import BooleanLattice, LatticeView, SubspaceLattice, order_complex


# -- chains -----------------------------------------------------------------------------


def test_orientation_sign():
    assert IntegerChain.face((1, 0)) == -IntegerChain.face((0, 1))
    assert IntegerChain.face((2, 0, 1)) == IntegerChain.face((0, 1, 2))
    assert IntegerChain.face((0, 1)).coefficient((1, 0)) == -1


def test_boundary_of_boundary_vanishes():
    triangle = IntegerChain.face((0, 1, 2))
    assert triangle.boundary().boundary() == IntegerChain.zero(0)
    assert IntegerChain.face((5,)).boundary() == empty_chain()


def test_closed_walk_is_a_cycle():
    assert not chain_from_walk((0, 1, 2, 0)).boundary()
    assert chain_from_walk((0, 1, 0)) == IntegerChain.zero(1)


def test_append_identity():
    f = IntegerChain.face((1, 2)) + 3 * IntegerChain.face((2, 3))

    cone = f.append(0)

    assert cone.boundary() == f - f.boundary().append(0)


def test_append_rejects_support_vertices():
    with pytest.raises(ChainError):
        IntegerChain.face((0, 1)).append(1)
    with pytest.raises(ChainError):
        IntegerChain.face((0, 1)).append(2, has_face=lambda face: False)


def test_mixed_levels_do_not_add():
    with pytest.raises(ChainError):
        IntegerChain.face((0,)) + IntegerChain.face((0, 1))


def test_chain_documents_keep_lattice_vertices():
    chain = IntegerChain.face(((1, 2), (2, 6))) - IntegerChain.face(((1, 4), (2, 6)))

    assert IntegerChain.from_dict(1, chain.to_dict()) == chain


# -- walks ------------------------------------------------------------------------------


def test_backtracking_reduction():
    assert bt_reduce((1, 2, 1)) == (1,)
    assert bt_reduce((1, 2, 3, 2, 1, 4)) == (1, 4)
    assert is_bt_trivial((0, 1, 2, 1, 0))
    assert bt_equivalent((0, 1, 0, 2), (0, 2))


def test_walk_checks():
    with pytest.raises(LoopError):
        check_walk(())
    with pytest.raises(LoopError):
        check_walk((0, 0, 1))
    with pytest.raises(LoopError):
        check_walk((0, 1), has_face=lambda e: False)
    with pytest.raises(LoopError):
        compose((0, 1), (2, 3))


def test_triangle_rewrites():
    assert tr_step((0, 1), 0, (0, 1, 2)) == (0, 2, 1)
    assert tr_step((0, 2, 1), 0, (0, 1, 2), remove=True) == (0, 1)
    with pytest.raises(LoopError):
        tr_step((0, 3), 0, (0, 1, 2))
    with pytest.raises(LoopError):
        tr_step((0, 1), 0, (0, 1, 2), has_face=lambda t: False)


walks = st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=12).map(
    lambda xs: tuple(x for i, x in enumerate(xs) if i == 0 or x != xs[i - 1]))


@given(walks)
def test_walk_followed_by_its_inverse_backtracks(walk):
    assert is_bt_trivial(compose(walk, inverse(walk)))
    assert bt_reduce(bt_reduce(walk)) == bt_reduce(walk)


# -- abelian cones ----------------------------------------------------------------------


def test_level_zero_cone_on_boolean_lattice():
    view = LatticeView(BooleanLattice(3), [1, 2])

    cone = build_cone(view, 0)
    check = verify_cone(cone)

    assert check.valid, check.violations
    assert cone.apex == (1, 1)
    assert 1 <= check.radius <= 3
    assert len(cone.faces(0)) == 6


def test_level_zero_cone_on_fano_plane():
    view = LatticeView(SubspaceLattice(3, 2), [1, 2])

    check = verify_cone(build_cone(view, 0, workers=2))

    assert check.valid
    assert check.radius <= 3
    assert check.max_vertex_support[0] <= 4


def test_level_one_cone_on_requested_faces():
    L = BooleanLattice(18)
    view = LatticeView(L, [1, 2, 8, 16, 17])
    edges = [
        ((1, 1), (2, 0b11)),
        ((8, 0xFF), (17, (1 << 17) - 1)),
        ((2, 0b110), (16, 0xFFFF)),
        ((1, 1 << 5), (8, 0xFF)),
    ]

    cone = build_cone(view, 1, faces=edges)
    check = verify_cone(cone)

    assert check.valid, [v.reason for v in check.violations]
    assert check.radius <= 24
    assert set(cone.faces(1)) == {tuple(sorted(e)) for e in edges}


def test_level_one_cone_on_a_large_subspace_lattice():
    L = SubspaceLattice(18, 2)
    units = [tuple(int(i == j) for j in range(18)) for i in range(18)]

    def first(r):
        return (r, L.span(*units[:r]))

    view = LatticeView(L, [1, 2, 8, 16, 17])
    edges = [
        (first(1), first(2)),
        (first(8), first(17)),
        ((2, L.span(units[1], units[2])), first(16)),
        ((1, L.span(units[5])), first(8)),
        ((1, L.span(tuple(a ^ b for a, b in zip(units[0], units[1])))), first(16)),
    ]

    cone = build_cone(view, 1, faces=edges)
    check = verify_cone(cone)

    assert check.valid, [v.reason for v in check.violations]
    assert check.radius_limit == 24
    assert check.radius <= 24
    assert check.max_vertex_support[0] <= 4
    assert check.max_vertex_support[1] <= 10


def test_cone_survives_serialization():
    view = LatticeView(BooleanLattice(3), [1, 2])
    cone = build_cone(view, 0)

    restored = Cone.from_dict(cone.to_dict(), view)

    assert verify_cone(restored).valid
    assert restored.radius() == cone.radius()


def test_tampered_cone_is_rejected():
    view = LatticeView(BooleanLattice(3), [1, 2])
    cone = build_cone(view, 0)
    far = next(s for s in cone.faces(0) if s[0] != cone.apex)
    cone.psi[0][far] = IntegerChain.zero(1)

    check = verify_cone(cone)

    assert not check.valid
    assert any(v.face == far for v in check.violations)


def test_radius_above_the_limit_is_rejected():
    view = LatticeView(BooleanLattice(3), [1, 2])
    cone = build_cone(view, 0)
    hexagon = chain_from_walk([(1, 1), (2, 3), (1, 2), (2, 6), (1, 4), (2, 5), (1, 1)])
    far = next(s for s in cone.faces(0) if s[0] != cone.apex)
    cone.psi[0][far] = cone.psi[0][far] + 2 * hexagon

    check = verify_cone(cone)

    assert check.radius_limit == 3
    assert check.radius == 6
    assert not check.valid
    assert any("radius 6 > 3" in v.reason for v in check.violations)
    assert not any("boundary" in v.reason for v in check.violations)
    assert verify_cone(cone, support_bounds=False).valid


def test_unsuitable_colors_are_rejected():
    with pytest.raises(SuitabilityError):
        build_cone(LatticeView(BooleanLattice(4), [2, 3]), 0)
    with pytest.raises(SuitabilityError):
        build_cone(LatticeView(BooleanLattice(3), [1, 2]), 1)


def test_cone_radius_gives_expansion_bound():
    cone = build_cone(LatticeView(BooleanLattice(3), [1, 2]), 0)

    bound = cone_to_bound(cone.radius(), cone.view.dimension, 0)

    assert bound == Fraction(1, 2 * cone.radius())


def test_fano_cone_bound_is_below_exact_expansion(z2):
    L = SubspaceLattice(3, 2)
    check = verify_cone(build_cone(LatticeView(L, [1, 2]), 0))

    bound = cone_to_bound(check.radius, 1, 0)
    report = h_exhaustive(order_complex(L, [1, 2]), 0, z2)

    assert check.valid
    assert bound >= Fraction(1, 6)
    assert report.exact
    assert report.value >= bound
