"""Simplicial complexes: construction, links, color restrictions and file I/O."""

from complexes.simplicial import (
    DEFAULT_FACE_BUDGET,
    Face,
    SimplicialComplex,
    canonical,
    permutation_sign,
)
from complexes.generators import (
    build_complex,
    complete_complex,
    complete_partite_complex,
    random_complex,
)
from complexes.io import complex_from_dict, complex_to_dict, load_complex, save_complex

__all__ = [
    'DEFAULT_FACE_BUDGET',
    'Face',
    'SimplicialComplex',
    'canonical',
    'permutation_sign',
    'build_complex',
    'complete_complex',
    'complete_partite_complex',
    'random_complex',
    'complex_from_dict',
    'complex_to_dict',
    'load_complex',
    'save_complex',
]
