"""Geometric lattices, subspace lattices, order complexes and suitable color sets."""

from lattice.geometric import (
    BooleanLattice,
    GeometricLattice,
    LatticeView,
    TableLattice,
    find_vertex_linking,
    order_complex,
)
from lattice.io import lattice_from_dict, lattice_to_dict, load_lattice, save_lattice
from lattice.rank_graphs import rank_graph, verify_lattice_link_expansion
from lattice.subspace import SubspaceLattice, gaussian_binomial, spherical_building, subspace_lattice
from lattice.suitability import (
    SuitabilityConstants,
    is_k_suitable,
    minimal_suitable_colors,
    sample_suitable_colors,
    suitability_constants,
    triple_colors,
)

__all__ = [
    'BooleanLattice',
    'GeometricLattice',
    'LatticeView',
    'TableLattice',
    'find_vertex_linking',
    'order_complex',
    'lattice_from_dict',
    'lattice_to_dict',
    'load_lattice',
    'save_lattice',
    'rank_graph',
    'verify_lattice_link_expansion',
    'SubspaceLattice',
    'gaussian_binomial',
    'spherical_building',
    'subspace_lattice',
    'SuitabilityConstants',
    'is_k_suitable',
    'minimal_suitable_colors',
    'sample_suitable_colors',
    'suitability_constants',
    'triple_colors',
]
