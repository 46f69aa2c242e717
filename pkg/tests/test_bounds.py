import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from errors import PreconditionError
from expansion import (
    cone_to_bound,
    decoder_bound,
    decoder_stratum_bound,
    default_eta,
    heavy_cosystole_bound,
    local_to_global_bound,
    nonabelian_cone_bound,
    overlap_constant,
)


def test_local_to_global_is_exact_without_spectral_term():
    assert local_to_global_bound(1, 0, 1) == Fraction(1, 24)
    assert local_to_global_bound([Fraction(1, 2), 1], 0, 1) == Fraction(1, 48)


def test_spectral_term_switches_to_floats():
    value = local_to_global_bound(1, 0.01, 1)
    assert isinstance(value, float)
    assert value == pytest.approx(1 / 24 - math.e * 0.01)


def test_heavy_cosystole_and_eta():
    assert heavy_cosystole_bound(1, 0, 1) == Fraction(1, 2)
    assert default_eta(1, 0) == Fraction(1, 8)
    assert default_eta(1, 1) == Fraction(1, 24)
    assert default_eta("1/2", 0) == Fraction(1, 16)


def test_link_constant_count_must_match_level():
    with pytest.raises(PreconditionError):
        local_to_global_bound([1, 1, 1], 0, 1)


def test_overlap_constant():
    assert overlap_constant(1, 1, 0, 1) == Fraction(1, 4)
    assert overlap_constant(1, 1, Fraction(1, 100), 1) == Fraction(6, 25)
    with pytest.raises(PreconditionError):
        overlap_constant(0, 1, 0, 1)


def test_cone_bounds():
    assert cone_to_bound(24, 4, 1) == Fraction(1, 240)
    assert nonabelian_cone_bound(9, 2) == Fraction(1, 9)
    with pytest.raises(PreconditionError):
        cone_to_bound(24, 4, 1, homogeneous=False)
    with pytest.raises(PreconditionError):
        cone_to_bound(0, 4, 1)
    with pytest.raises(PreconditionError):
        nonabelian_cone_bound(9, 1)


def test_decoder_strata():
    eps = Fraction(1, 100)
    assert decoder_stratum_bound(0, 1, 1, 1, eps) == Fraction(3, 100)
    assert decoder_stratum_bound(1, 1, 1, 1, eps) == Fraction(6, 100)
    assert decoder_stratum_bound(2, 1, 1, 1, eps) == Fraction(9, 100)
    with pytest.raises(PreconditionError):
        decoder_stratum_bound(3, 1, 1, 1, eps)


def test_decoder_bound_closed_form():
    assert decoder_bound(1, 1, 1, 0.01) == pytest.approx(math.e * 6 * 0.01)
    assert decoder_bound(0, 0.5, 0.5, 0.001) == pytest.approx(math.e * 2 * 0.001 / 0.25)


@given(
    k=st.integers(min_value=0, max_value=3),
    beta=st.fractions(min_value=Fraction(1, 10), max_value=1),
    p=st.fractions(min_value=Fraction(1, 10), max_value=1),
    eps=st.fractions(min_value=Fraction(1, 10000), max_value=Fraction(1, 10)),
)
def test_every_stratum_sits_below_the_overall_bound(k, beta, p, eps):
    overall = decoder_bound(k, beta, p, eps)
    for i in range(k + 2):
        assert float(decoder_stratum_bound(i, k, beta, p, eps)) <= overall * (1 + 1e-12)


@given(
    k=st.integers(min_value=0, max_value=3),
    low=st.fractions(min_value=Fraction(1, 100), max_value=1),
    high=st.fractions(min_value=Fraction(1, 100), max_value=1),
)
def test_local_to_global_is_monotone_in_link_expansion(k, low, high):
    low, high = min(low, high), max(low, high)
    assert local_to_global_bound(low, 0, k) <= local_to_global_bound(high, 0, k)
    assert default_eta(high, k) == local_to_global_bound(high, 0, k)
