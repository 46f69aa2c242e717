"""Expansion measurements: exhaustive and randomized h^k, link spectra and closed-form bounds."""

from expansion.bounds import (
    cone_to_bound,
    decoder_bound,
    decoder_stratum_bound,
    default_eta,
    heavy_cosystole_bound,
    local_to_global_bound,
    nonabelian_cone_bound,
    overlap_constant,
)
from expansion.exhaustive import h_exhaustive, witness_ratio
from expansion.randomized import h_randomized
from expansion.reports import COBOUNDARY, COSYSTOLIC, ExpansionReport
from expansion.spectral import (
    SpectralCertificate,
    edge_expansion,
    second_eigenvalue_power,
    spectral_certificate,
    verify_partition_mass,
)
from expansion.upper_bound import random_upper_bound_experiment, upper_bound_epsilon

__all__ = [
    'cone_to_bound',
    'decoder_bound',
    'decoder_stratum_bound',
    'default_eta',
    'heavy_cosystole_bound',
    'local_to_global_bound',
    'nonabelian_cone_bound',
    'overlap_constant',
    'h_exhaustive',
    'witness_ratio',
    'h_randomized',
    'COBOUNDARY',
    'COSYSTOLIC',
    'ExpansionReport',
    'SpectralCertificate',
    'edge_expansion',
    'second_eigenvalue_power',
    'spectral_certificate',
    'verify_partition_mass',
    'random_upper_bound_experiment',
    'upper_bound_epsilon',
]
