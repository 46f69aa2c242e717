import math

import pytest
from hypothesis import given, settings, strategies as st

from errors import ComplexError, LatticeError, PreconditionError, SuitabilityError
from lattice import (
    BooleanLattice,
    LatticeView,
    SubspaceLattice,
    TableLattice,
    gaussian_binomial,
    is_k_suitable,
    lattice_from_dict,
    load_lattice,
    minimal_suitable_colors,
    order_complex,
    sample_suitable_colors,
    save_lattice,
    spherical_building,
    suitability_constants,
    triple_colors,
    verify_lattice_link_expansion,
)


def pentagon():
    """N5: bottom, a < c, b, top. Not graded."""
    join = [
        [0, 1, 2, 3, 4],
        [1, 1, 4, 3, 4],
        [2, 4, 2, 4, 4],
        [3, 3, 4, 3, 4],
        [4, 4, 4, 4, 4],
    ]
    return [0, 1, 1, 2, 3], join


def boolean_table():
    return [0, 1, 1, 2], [[x | y for y in range(4)] for x in range(4)]


# -- lattices ---------------------------------------------------------------------------


def test_gaussian_binomials():
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 2, 3) == 130
    assert gaussian_binomial(4, 5, 2) == 0


def test_subspace_lattice_operations():
    L = SubspaceLattice(3, 2)
    x, y = L.span([1, 0, 0]), L.span([0, 1, 0])

    assert L.rank(L.join(x, y)) == 2
    assert L.meet(x, y) == L.bottom
    assert L.leq(x, L.join(x, y))
    assert len(L.elements_of_rank(1)) == 7
    assert len(SubspaceLattice(3, 3).elements_of_rank(2)) == 13


def test_subspace_lattice_is_geometric():
    SubspaceLattice(3, 2).validate()


def test_unsupported_field_is_rejected():
    with pytest.raises(LatticeError):
        SubspaceLattice(3, 7)


def test_table_lattice_accepts_boolean_square():
    ranks, join = boolean_table()
    L = TableLattice(ranks, join, homogeneous=True, name="B2")

    assert L.meet(1, 2) == 0
    assert L.atoms() == [1, 2]
    assert L.height == 2


def test_table_lattice_rejects_pentagon():
    ranks, join = pentagon()
    with pytest.raises(LatticeError):
        TableLattice(ranks, join)


def test_table_lattice_rejects_asymmetric_join():
    ranks, join = boolean_table()
    join[1][2] = 1
    with pytest.raises(LatticeError):
        TableLattice(ranks, join)


def test_boolean_lattice_element_between():
    L = BooleanLattice(4)
    assert L.element_between(0b0001, 0b1011, 2) == 0b0011
    assert L.element_between(0b0001, 0b0110, 2) is None


# -- order complexes --------------------------------------------------------------------


def test_fano_building():
    X = spherical_building(3, 2)

    assert len(X.vertices) == 14
    assert X.face_count(1) == 21
    assert all(p == pytest.approx(1 / 14) for p in X.probabilities(0))


@pytest.mark.slow
def test_building_of_four_space():
    X = spherical_building(4, 2)

    assert len(X.vertices) == 15 + 35 + 15
    assert X.face_count(2) == 315


def test_boolean_order_complex_is_a_hexagon():
    X = order_complex(BooleanLattice(3))

    assert X.dimension == 1
    assert len(X.vertices) == 6
    assert X.face_count(1) == 6
    assert X.colors is not None


def test_colored_order_complex():
    X = order_complex(SubspaceLattice(4, 2), colors=[1, 3])

    assert len(X.vertices) == 30
    assert X.face_count(1) == 15 * 7


def test_order_complex_rejects_improper_ranks():
    with pytest.raises(ComplexError):
        order_complex(BooleanLattice(3), colors=[0, 1])
    with pytest.raises(LatticeError):
        order_complex(BooleanLattice(1))


def test_lattice_view_answers_without_materializing():
    view = LatticeView(BooleanLattice(3), [1, 2])

    assert view.dimension == 1
    assert len(view.faces(1)) == 6
    assert view.has_face([(1, 1), (2, 3)])
    assert not view.has_face([(1, 4), (2, 3)])
    assert view.first_vertex(2) == (2, 3)
    assert view.linking_vertex([(1, 1)], 2) == (2, 3)


def test_lattice_view_matches_order_complex():
    view = LatticeView(SubspaceLattice(3, 2), [1, 2])
    X = view.to_complex()

    assert len(view.faces(1)) == X.face_count(1)
    ids = LatticeView.vertex_map(X)
    assert all(tuple(sorted(ids[v] for v in face)) in set(X.faces(1)) for face in view.faces(1))


def test_lattice_view_rejects_bad_colors():
    with pytest.raises(ComplexError):
        LatticeView(BooleanLattice(3), [0, 1])


# -- rank graphs ------------------------------------------------------------------------


def test_boolean_rank_graph():
    cert = verify_lattice_link_expansion(BooleanLattice(3), 1, 2)

    assert cert.lam == pytest.approx(0.5)
    assert cert.passed


def test_subspace_rank_graph():
    cert = verify_lattice_link_expansion(SubspaceLattice(4, 2), 1, 2)

    assert cert.lam == pytest.approx(math.sqrt(2 / 7))
    assert cert.passed


def test_rank_graph_needs_spread_ranks():
    with pytest.raises(PreconditionError):
        verify_lattice_link_expansion(BooleanLattice(4), 2, 3)
    with pytest.raises(PreconditionError):
        verify_lattice_link_expansion(BooleanLattice(3), 1, 3)


# -- lattice files ----------------------------------------------------------------------


def test_lattice_files(tmp_path):
    boolean = load_lattice(save_lattice(BooleanLattice(3), tmp_path / "b.json"))
    subspace = load_lattice(save_lattice(SubspaceLattice(3, 3), tmp_path / "s.json"))
    ranks, join = boolean_table()
    table = load_lattice(save_lattice(TableLattice(ranks, join, name="B2"), tmp_path / "t.json"))

    assert isinstance(boolean, BooleanLattice) and boolean.n == 3
    assert isinstance(subspace, SubspaceLattice) and (subspace.n, subspace.q) == (3, 3)
    assert table.join(1, 2) == 3 and table.name == "B2"


def test_malformed_lattice_documents():
    with pytest.raises(LatticeError):
        lattice_from_dict({"join": "subspace:x"})
    with pytest.raises(LatticeError):
        lattice_from_dict({"join": 5, "rank": [0]})
    with pytest.raises(LatticeError):
        load_lattice("/nonexistent/lattice.json")


# -- suitable colors --------------------------------------------------------------------


def test_suitability_constants():
    consts = suitability_constants(1)

    assert consts.c == [2, 5]
    assert consts.n == [4, 10]
    assert consts.D == [3, 24]
    assert consts.radius == 24
    assert consts.colors_needed == 5
    with pytest.raises(SuitabilityError):
        suitability_constants(-1)


def test_minimal_suitable_colors():
    assert minimal_suitable_colors(10, 0) == [1, 2]
    assert minimal_suitable_colors(20, 1) == [1, 2, 8, 16, 17]
    assert minimal_suitable_colors(16, 1) is None


def test_suitability_checks():
    assert is_k_suitable([1, 3], 0)
    assert not is_k_suitable([2, 3], 0)
    assert is_k_suitable([1, 2, 8, 16, 17], 1)
    assert not is_k_suitable([1, 2, 7, 16, 17], 1)
    with pytest.raises(SuitabilityError):
        is_k_suitable([1, 2, 8], 1)


def test_sampling_falls_back_on_small_lattices():
    assert sample_suitable_colors(2, 0) is None
    assert sample_suitable_colors(2, 0, fallback=True) == [1, 2]
    with pytest.raises(SuitabilityError):
        sample_suitable_colors(1, 0)


@settings(max_examples=50)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_sampled_colors_are_suitable(seed):
    F = sample_suitable_colors(10_000, 0, seed=seed)

    assert F is not None
    assert is_k_suitable(F, 0)
    assert 18 <= F[0] <= 34 and 417 <= F[1] <= 833


@given(d=st.integers(min_value=3, max_value=5000), seed=st.integers(min_value=0, max_value=1000))
def test_triple_colors(d, seed):
    i0, i1, i2 = triple_colors(d, seed)

    assert 1 <= i0 < i1 < i2 <= d
    if d >= 18:
        assert 2 * i0 <= i1 and 3 * i1 <= i2
    else:
        assert (i0, i1, i2) == (1, 2, 3)


def test_triple_colors_need_three_ranks():
    with pytest.raises(SuitabilityError):
        triple_colors(2)
