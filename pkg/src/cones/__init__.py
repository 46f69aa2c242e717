"""Integer chains, abelian cones and non-abelian cones over lattice order complexes."""

from cones.abelian import Cone, ConeCheck, ConeViolation, build_cone, verify_cone
from cones.chains import IntegerChain, chain_from_walk, empty_chain, vertex_chain
from cones.loops import bt_equivalent, bt_reduce, check_walk, compose, inverse, is_bt_trivial, tr_step
from cones.nonabelian import (
    DIAMETER_BOUND,
    Contraction,
    ContractionStep,
    NonAbelianCheck,
    NonAbelianCone,
    build_nonabelian_cone,
    check_triple_colors,
    verify_nonabelian_cone,
)

__all__ = [
    'Cone',
    'ConeCheck',
    'ConeViolation',
    'build_cone',
    'verify_cone',
    'IntegerChain',
    'chain_from_walk',
    'empty_chain',
    'vertex_chain',
    'bt_equivalent',
    'bt_reduce',
    'check_walk',
    'compose',
    'inverse',
    'is_bt_trivial',
    'tr_step',
    'DIAMETER_BOUND',
    'Contraction',
    'ContractionStep',
    'NonAbelianCheck',
    'NonAbelianCone',
    'build_nonabelian_cone',
    'check_triple_colors',
    'verify_nonabelian_cone',
]
