from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from cochains import Cochain, coboundary
from complexes import complete_partite_complex
from cones import build_cone, build_nonabelian_cone
from decoder import (
    certify_by_cone,
    certify_color_set,
    conditional_error_rates,
    decode,
    outside_faces,
    select_good_F,
)
from errors import DecodeError, PreconditionError
from lattice import BooleanLattice, LatticeView, SubspaceLattice, spherical_building


def planted(X, group, seed):
    rng = np.random.default_rng(seed)
    return coboundary(Cochain.random(X, 0, group, rng))


def flip_edge_between(f, colors):
    """Move f off its value on the first edge whose colors are `colors`."""
    X = f.complex
    index = next(i for i, (u, v) in enumerate(X.faces(1))
                 if {X.color(u), X.color(v)} == set(colors))
    values = f.values.copy()
    values[index] = f.group.mul(int(values[index]), 1)
    return f.with_values(values)


def test_outside_faces(partite4):
    assert outside_faces(partite4, [0, 1, 2], 1) == [(6,), (7,)]
    assert outside_faces(partite4, [0, 1], 2) == [(4, 6), (4, 7), (5, 6), (5, 7)]


def test_certified_color_set(partite4, z2):
    cert = certify_color_set(partite4, [0, 1, 2], 1, z2)

    assert cert.certified
    assert cert.links == 2
    assert cert.beta > 0
    assert cert.to_dict()["F"] == [0, 1, 2]


def test_planted_coboundary_decodes_exactly(partite4, z3):
    f = planted(partite4, z3, seed=1)

    g, report = decode(f, [0, 1, 2])

    assert coboundary(g) == f
    assert report.overall == 0
    assert report.dist_i == [0, 0, 0]
    assert report.link_equivalence
    assert report.disjunction
    assert report.bound is None
    assert not report.verified


def test_certified_decoding_is_verified(partite4, z2):
    f = planted(partite4, z2, seed=2)
    cert = certify_color_set(partite4, [0, 1, 2], 1, z2)

    _, report = decode(f, cert)

    assert report.overall == 0
    assert report.bound == 0
    assert report.verified


def test_nonabelian_planted_coboundary(partite4, s3):
    f = planted(partite4, s3, seed=3)

    g, report = decode(f, [0, 1, 2])

    assert report.overall == 0
    assert report.link_equivalence
    assert report.disjunction is None
    assert any("abelian" in note for note in report.notes)
    assert coboundary(g).values.tolist() == f.values.tolist()


def test_single_corrupted_edge(partite4, z2):
    clean = planted(partite4, z2, seed=4)
    f = flip_edge_between(clean, (2, 3))
    certificates = [certify_color_set(partite4, F, 1, z2) for F in combinations(range(4), 3)]

    good = select_good_F(f, certificates)
    g, report = decode(f, good)

    assert good.colors == (0, 1, 2)
    assert good.eps == Fraction(1, 8)
    assert good.p == 1
    assert coboundary(g) == clean
    assert report.overall == Fraction(1, 24)
    assert report.dist_i == [0, Fraction(1, 12), 0]
    assert report.overall <= report.bound
    assert report.verified


def test_error_rates_by_overlap(partite4, z2):
    f = flip_edge_between(planted(partite4, z2, seed=5), (2, 3))

    assert conditional_error_rates(f, [0, 1, 2]) == [0, Fraction(1, 6), 0]
    assert conditional_error_rates(f, [1, 2, 3]) == [0, Fraction(1, 12), Fraction(1, 4)]


def test_no_certified_candidate(partite4, z2):
    f = planted(partite4, z2, seed=6)
    cert = certify_color_set(partite4, [0, 1, 2], 1, z2)
    cert.beta = None

    with pytest.raises(DecodeError):
        select_good_F(f, [cert])
    with pytest.raises(DecodeError):
        select_good_F(f, [])


def test_vertex_level_decodes_to_a_constant(z3):
    X = complete_partite_complex([2, 2, 2])
    f = Cochain(X, 0, z3, [2] * 6)

    g, report = decode(f, [0, 1])

    assert g.level == -1
    assert g.values.tolist() == [2]
    assert report.overall == 0


def test_decoding_needs_colors(k6_2, partite4, z2):
    with pytest.raises(PreconditionError):
        decode(Cochain.zeros(k6_2, 1, z2), [0, 1, 2])
    with pytest.raises(PreconditionError):
        decode(Cochain.zeros(partite4, 1, z2), [0, 1])
    with pytest.raises(PreconditionError):
        decode(Cochain.zeros(partite4, 1, z2), [0, 1, 9])


def test_larger_color_sets_skip_the_bounds(partite4, z2):
    f = planted(partite4, z2, seed=7)

    _, report = decode(f, [0, 1, 2, 3], beta=Fraction(1, 2))

    assert report.overall == 0
    assert report.bound is None
    assert any("|F|" in note for note in report.notes)


# -- cone certificates ------------------------------------------------------------------


def test_abelian_cone_certificate():
    cone = build_cone(LatticeView(BooleanLattice(3), [1, 2]), 0)

    cert = certify_by_cone([1, 2], cone, k=0)

    assert cert.method == "cone"
    assert cert.beta == Fraction(1, 2 * cone.radius())
    with pytest.raises(DecodeError):
        certify_by_cone([1, 3], cone, k=0)


def test_nonabelian_cone_certificate():
    cone = build_nonabelian_cone(LatticeView(BooleanLattice(4), [1, 2, 3]))

    cert = certify_by_cone([1, 2, 3], cone)

    assert cert.method == "nonabelian-cone"
    assert cert.beta == Fraction(1, cone.diameter())
    with pytest.raises(PreconditionError):
        certify_by_cone([1, 2, 3], cone, k=0)


@pytest.mark.slow
def test_building_decoder_at_two_percent_noise(z2):
    X = spherical_building(4, 2)
    rng = np.random.default_rng(0)
    clean = coboundary(Cochain.random(X, 0, z2, rng))
    masses, den = X.mass(1), X.mass_denominator(1)
    values = clean.values.copy()
    flipped = 0
    for i in rng.permutation(X.face_count(1)):
        if Fraction(flipped, den) >= Fraction(1, 50):
            break
        values[i] ^= 1
        flipped += int(masses[i])
    f = clean.with_values(values)
    cone = build_nonabelian_cone(LatticeView(SubspaceLattice(4, 2), [1, 2, 3]), workers=4)

    g, report = decode(f, certify_by_cone([1, 2, 3], cone))

    assert f.distance(clean) >= Fraction(1, 50)
    assert report.verified, report.notes
    assert report.overall <= report.bound
    assert all(d <= b for d, b in zip(report.dist_i, report.bound_i))
    assert report.overall == f.distance(coboundary(g))
