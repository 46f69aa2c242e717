"""Bipartite incidence graphs between two ranks of a lattice."""

import logging
import math

import networkx as nx

from errors import PreconditionError
from expansion.spectral import DEFAULT_TOLERANCE, LinkSpectrum, SpectralCertificate, graph_spectrum
from lattice.geometric import GeometricLattice

logger = logging.getLogger(__name__)

RANK_GRAPH_TARGET = 1 / math.sqrt(2)


def rank_graph(L: GeometricLattice, i: int, j: int) -> nx.Graph:
    """Elements of ranks i and j, joined when comparable; uniform edge weights."""
    G = nx.Graph()
    lower, upper = L.elements_of_rank(i), L.elements_of_rank(j)
    G.add_nodes_from((i, x) for x in lower)
    G.add_nodes_from((j, y) for y in upper)
    for x in lower:
        for y in upper:
            if L.leq(x, y):
                G.add_edge((i, x), (j, y), weight=1.0)
    return G


def verify_lattice_link_expansion(L: GeometricLattice, i: int, j: int,
                                  tolerance: float = DEFAULT_TOLERANCE) -> SpectralCertificate:
    """
    λ_2 of the rank-i / rank-j graph against 1/√2.

    Uniform weights are the induced ones only for homogeneous lattices; for
    other lattices λ_2 is still reported but the target is dropped.

    Raises:
        PreconditionError: unless 1 ≤ i and 2i ≤ j < rank(top)
    """
    if i < 1 or j < 2 * i:
        raise PreconditionError(f"Rank graph expansion needs j >= 2i, got i={i}, j={j}")
    if j >= L.height:
        raise PreconditionError(f"Rank {j} is not a proper rank of {L.name}")
    G = rank_graph(L, i, j)
    second, smallest, connected = graph_spectrum(G)
    target = RANK_GRAPH_TARGET if L.homogeneous else None
    if target is None:
        logger.warning("%s is not flagged homogeneous; reporting lambda_2 without a target", L.name)
    logger.info("Rank graph (%d,%d) of %s: lambda_2 = %.6f", i, j, L.name, second)
    link = LinkSpectrum((i, j), second, smallest, connected, G.number_of_nodes())
    return SpectralCertificate([link], second, target, tolerance)
