"""Coefficient groups, cochains, cochain spaces and the exact group-word solver."""

from cochains.groups import (
    FiniteGroup,
    cyclic,
    direct_product,
    from_table,
    parse_group,
    symmetric,
    validate_table,
)
from cochains.cochain import Cochain, coboundary, coboundary_from_facets, distance, weight
from cochains.solver import GroupCSP, SolveResult
from cochains.spaces import (
    DEFAULT_ENUMERATION_BUDGET,
    CochainSpace,
    Nearest,
    cohomology_dimension,
    coboundary_matrix,
    distance_to_space,
    enumerate_space,
    is_coboundary,
    is_cocycle,
    nearest_coboundary,
    space_basis,
)

__all__ = [
    'FiniteGroup',
    'cyclic',
    'direct_product',
    'from_table',
    'parse_group',
    'symmetric',
    'validate_table',
    'Cochain',
    'coboundary',
    'coboundary_from_facets',
    'distance',
    'weight',
    'GroupCSP',
    'SolveResult',
    'DEFAULT_ENUMERATION_BUDGET',
    'CochainSpace',
    'Nearest',
    'cohomology_dimension',
    'coboundary_matrix',
    'distance_to_space',
    'enumerate_space',
    'is_coboundary',
    'is_cocycle',
    'nearest_coboundary',
    'space_basis',
]
