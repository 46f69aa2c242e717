from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from complexes import (
    build_complex,
    canonical,
    complete_complex,
    complete_partite_complex,
    complex_from_dict,
    complex_to_dict,
    load_complex,
    permutation_sign,
    random_complex,
    save_complex,
)
from errors import ComplexError


def test_single_simplex_has_uniform_edges():
    X = build_complex([[0, 1, 2]])
    assert X.dimension == 2
    assert X.face_count(1) == 3
    assert all(X.probability(e) == Fraction(1, 3) for e in X.faces(1))


def test_complete_complex_counts():
    assert complete_complex(5, 2).face_count(2) == 10
    assert complete_complex(6, 3).face_count(3) == 15
    assert complete_complex(6, 3).face_count(1) == 15
    assert complete_complex(3, 1).face_count(1) == 3


def test_complete_complex_vertex_probability():
    X = complete_complex(5, 2)
    assert all(X.probability(v) == Fraction(1, 5) for v in X.faces(0))


def test_complete_complex_rejects_too_few_vertices():
    with pytest.raises(ComplexError):
        complete_complex(2, 2)


def test_empty_face_is_level_minus_one():
    X = complete_complex(4, 2)
    assert X.faces(-1) == [()]
    assert X.probability(()) == 1


def test_link_of_empty_face_is_the_complex():
    X = complete_complex(5, 2)
    assert X.link(()) is X


def test_vertex_link_of_complete_complex_is_complete_graph():
    L = complete_complex(5, 2).link([0])
    assert L.dimension == 1
    assert L.vertices == (1, 2, 3, 4)
    assert L.face_count(1) == 6
    assert set(L.top_weights.values()) == {Fraction(1, 6)}


def test_link_of_missing_face_raises():
    with pytest.raises(ComplexError):
        complete_complex(4, 1).link([0, 1, 2])


def test_non_pure_input_is_rejected():
    with pytest.raises(ComplexError, match="Non-pure"):
        build_complex([[0, 1, 2], [2, 3]])


def test_weights_must_sum_to_one():
    with pytest.raises(ComplexError):
        build_complex([[0, 1], [1, 2]], weights=[Fraction(1, 2), Fraction(1, 3)])


def test_weights_can_be_given_per_face():
    X = build_complex([[0, 1], [1, 2]], weights={(1, 0): "1/4", (2, 1): "3/4"})
    assert X.probability([1]) == Fraction(1, 2)
    assert X.probability([0]) == Fraction(1, 8)


def test_improper_coloring_is_rejected():
    with pytest.raises(ComplexError, match="Improper"):
        build_complex([[0, 1], [0, 2]], colors={0: 0, 1: 0, 2: 1})


def test_face_budget_is_enforced():
    with pytest.raises(ComplexError, match="face budget"):
        complete_complex(10, 4, face_budget=100)


def test_partite_complex_colors_and_restriction():
    X = complete_partite_complex([2, 2, 2, 2])
    assert X.color_set == (0, 1, 2, 3)
    assert X.face_count(3) == 16
    Y = X.color_restriction([0, 1, 2])
    assert Y.dimension == 2
    assert Y.face_count(2) == 8
    assert set(Y.top_weights.values()) == {Fraction(1, 8)}


def test_restriction_needs_colors():
    with pytest.raises(ComplexError):
        complete_complex(4, 2).color_restriction([0])
    with pytest.raises(ComplexError, match="Unknown"):
        complete_partite_complex([1, 1]).color_restriction([5])


def test_permutation_sign_and_canonical():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((2, 0, 1)) == 1
    assert canonical((3, 1, 2)) == ((1, 2, 3), 1)
    with pytest.raises(ComplexError):
        canonical((1, 1))


def test_star_masses():
    X = complete_complex(4, 2)
    star = X.star([0], 1)
    assert sorted(star) == [(0, 1), (0, 2), (0, 3)]
    assert sum(star.values()) == Fraction(1, 2)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(4, 7), d=st.integers(1, 3), count=st.integers(1, 6), seed=st.integers(0, 1000))
def test_induced_probabilities_sum_to_one(n, d, count, seed):
    from math import comb
    if d + 1 > n or count > comb(n, d + 1):
        return
    X = random_complex(n, d, count, seed)
    for k in range(-1, d + 1):
        assert sum(X.probability(face) for face in X.faces(k)) == 1


@settings(max_examples=20, deadline=None)
@given(n=st.integers(4, 6), seed=st.integers(0, 1000))
def test_induced_probability_formula(n, seed):
    from math import comb
    X = random_complex(n, 2, 4, seed)
    tops = X.top_weights
    for edge in X.faces(1):
        expected = sum(w for top, w in tops.items() if set(edge) <= set(top)) / comb(3, 2)
        assert X.probability(edge) == expected


def test_save_and_load(tmp_path):
    X = build_complex([[0, 1], [1, 2]], weights=["1/4", "3/4"], colors={0: 0, 1: 1, 2: 0}, name="path")
    path = save_complex(X, tmp_path / "path.json")
    Y = load_complex(path)
    assert Y == X
    assert Y.name == "path"


def test_document_dimension_must_match():
    doc = complex_to_dict(complete_complex(4, 1))
    doc["dimension"] = 2
    with pytest.raises(ComplexError, match="Declared dimension"):
        complex_from_dict(doc)
