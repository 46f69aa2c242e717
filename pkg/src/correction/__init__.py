"""Local correction, local minimality and the averaging-operator verifiers."""

from correction.local_correction import CorrectionStep, CorrectionTrace, as_eta, best_fix, correct
from correction.minimality import MinimalityResult, is_locally_minimal
from correction.operators import (
    FaceFunction,
    down,
    down_matrix,
    down_power,
    n_walk,
    sample_n_walk,
    up,
    up_matrix,
    up_power,
    walk_matrix,
)
from correction.verifiers import (
    heavy_cocycle_bound,
    verify_heavy_cocycle,
    verify_key_inequality,
    verify_walk_inequality,
)

__all__ = [
    'CorrectionStep',
    'CorrectionTrace',
    'as_eta',
    'best_fix',
    'correct',
    'MinimalityResult',
    'is_locally_minimal',
    'FaceFunction',
    'down',
    'down_matrix',
    'down_power',
    'n_walk',
    'sample_n_walk',
    'up',
    'up_matrix',
    'up_power',
    'walk_matrix',
    'heavy_cocycle_bound',
    'verify_heavy_cocycle',
    'verify_key_inequality',
    'verify_walk_inequality',
]
