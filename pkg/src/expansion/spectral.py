"""
Spectral certificates for links and edge-expansion checks on weighted graphs.

The random walk on a link's 1-skeleton moves along an edge with probability
proportional to its induced weight; its spectrum is read off the symmetric
matrix D^{-1/2} W D^{-1/2}.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.linalg import eigh

from complexes.simplicial import SimplicialComplex
from errors import PreconditionError
from utils.parallel import ordered_results, run_parallel

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9
MAX_EXHAUSTIVE_VERTICES = 22


@dataclass
class LinkSpectrum:
    face: tuple
    second: float
    smallest: float
    connected: bool
    vertices: int

    def to_dict(self) -> Dict:
        return {"face": list(self.face), "lambda2": self.second, "smallest": self.smallest,
                "connected": self.connected, "vertices": self.vertices}


@dataclass
class SpectralCertificate:
    links: List[LinkSpectrum]
    lam: float
    target: Optional[float] = None
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def passed(self) -> bool:
        return self.target is None or self.lam <= self.target + self.tolerance

    def worst_link(self) -> Optional[LinkSpectrum]:
        return max(self.links, key=lambda s: s.second) if self.links else None

    def to_dict(self) -> Dict:
        return {
            "kind": "spectral",
            "params": {"target": self.target, "tolerance": self.tolerance},
            "value": self.lam,
            "passed": self.passed,
            "links": [s.to_dict() for s in self.links],
        }


def normalized_adjacency(G: nx.Graph, weight: str = "weight") -> Tuple[list, np.ndarray]:
    nodes = list(G.nodes())
    W = nx.to_numpy_array(G, nodelist=nodes, weight=weight)
    deg = W.sum(axis=1)
    scale = np.zeros_like(deg)
    scale[deg > 0] = 1.0 / np.sqrt(deg[deg > 0])
    return nodes, scale[:, None] * W * scale[None, :]


def graph_spectrum(G: nx.Graph) -> Tuple[float, float, bool]:
    """(λ_2, smallest eigenvalue, connected); a disconnected graph reports λ_2 = 1."""
    if G.number_of_nodes() < 2:
        return 1.0, 1.0, G.number_of_nodes() == 1
    _, A = normalized_adjacency(G)
    eig = eigh(A, eigvals_only=True)
    connected = nx.is_connected(G)
    second = float(eig[-2]) if connected else 1.0
    return second, float(eig[0]), connected


def link_spectrum(X: SimplicialComplex, face: tuple) -> LinkSpectrum:
    link = X.link(face)
    G = link.skeleton_graph()
    second, smallest, connected = graph_spectrum(G)
    return LinkSpectrum(tuple(face), second, smallest, connected, G.number_of_nodes())


def spectral_certificate(X: SimplicialComplex, target: Optional[float] = None,
                         tolerance: float = DEFAULT_TOLERANCE, workers: int = 1,
                         quiet: bool = True) -> SpectralCertificate:
    """λ = max λ_2 over the links of all faces of dimension -1..d-2."""
    faces = [face for level in range(-1, X.dimension - 1) for face in X.faces(level)]
    if not faces:
        return SpectralCertificate([], 0.0, target, tolerance)
    results, errors = run_parallel(lambda s: link_spectrum(X, s), faces, workers=workers,
                                   quiet=quiet, desc="Link spectra")
    if errors:
        raise PreconditionError(f"Link spectrum failed: {next(iter(errors.values()))}")
    links = ordered_results(results)
    lam = max(s.second for s in links)
    logger.info("Spectral certificate for %s: lambda = %.6f over %d links", X.name, lam, len(links))
    return SpectralCertificate(links, lam, target, tolerance)


def second_eigenvalue_power(G: nx.Graph, iterations: int = 20000, tol: float = 1e-13,
                            seed: int = 0) -> float:
    """
    λ_2 by power iteration on (A + I)/2 with the top eigenvector deflated.

    Used as an independent cross-check of the dense eigensolver.
    """
    nodes, A = normalized_adjacency(G)
    W = nx.to_numpy_array(G, nodelist=nodes, weight="weight")
    top = np.sqrt(W.sum(axis=1))
    top /= np.linalg.norm(top)
    M = (A + np.eye(len(nodes))) / 2
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(len(nodes))
    x -= (x @ top) * top
    x /= np.linalg.norm(x)
    estimate = x @ M @ x
    for _ in range(iterations):
        y = M @ x
        y -= (y @ top) * top
        norm = np.linalg.norm(y)
        if norm == 0:
            return -1.0
        x = y / norm
        new = x @ M @ x
        if abs(new - estimate) < tol:
            estimate = new
            break
        estimate = new
    return float(2 * estimate - 1)


def max_rayleigh_quotient(G: nx.Graph, samples: int = 1000, seed: int = 0) -> float:
    """Largest Rayleigh quotient of A over random vectors orthogonal to the top eigenvector."""
    nodes, A = normalized_adjacency(G)
    W = nx.to_numpy_array(G, nodelist=nodes, weight="weight")
    top = np.sqrt(W.sum(axis=1))
    top /= np.linalg.norm(top)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, len(nodes)))
    X -= np.outer(X @ top, top)
    num = np.einsum('ij,jk,ik->i', X, A, X)
    den = np.einsum('ij,ij->i', X, X)
    return float(np.max(num / den))


# -- edge expansion --------------------------------------------------------------------


def _node_masses(G: nx.Graph, nodes: list) -> np.ndarray:
    if all("mass" in G.nodes[v] for v in nodes):
        masses = np.array([G.nodes[v]["mass"] for v in nodes], dtype=float)
    else:
        masses = np.array([G.degree(v, weight="weight") for v in nodes], dtype=float)
    return masses / masses.sum()


def edge_expansion(G: nx.Graph) -> Tuple[float, frozenset]:
    """
    min Pr[E(S, V∖S)] / Pr[S] over vertex sets with 0 < Pr[S] ≤ 1/2.

    Edge masses are the normalized "weight" attributes, vertex masses the
    "mass" attributes (or normalized weighted degrees).
    """
    nodes = list(G.nodes())
    n = len(nodes)
    if n > MAX_EXHAUSTIVE_VERTICES:
        raise PreconditionError(f"Exhaustive edge expansion supports at most {MAX_EXHAUSTIVE_VERTICES} vertices")
    if n < 2:
        raise PreconditionError("Edge expansion needs at least two vertices")
    masses = _node_masses(G, nodes)
    pos = {v: i for i, v in enumerate(nodes)}
    edges = [(pos[u], pos[v], float(w)) for u, v, w in G.edges(data="weight", default=1.0)]
    total = sum(w for _, _, w in edges)
    subsets = np.arange(1, 2 ** n, dtype=np.int64)
    bits = ((subsets[:, None] >> np.arange(n)[None, :]) & 1).astype(bool)
    inside = bits.astype(float) @ masses
    cut = np.zeros(len(subsets))
    for u, v, w in edges:
        cut += (w / total) * (bits[:, u] != bits[:, v])
    valid = inside <= 0.5 + 1e-12
    ratios = np.full(len(subsets), np.inf)
    ratios[valid] = cut[valid] / inside[valid]
    best = int(np.argmin(ratios))
    members = frozenset(nodes[i] for i in range(n) if bits[best, i])
    return float(ratios[best]), members


@dataclass
class PartitionCheck:
    crossing: float
    largest_part: float
    applies: bool
    holds: bool
    masses: List[float] = field(default_factory=list)


def verify_partition_mass(G: nx.Graph, parts: Sequence[Iterable[Hashable]],
                          lam: float) -> PartitionCheck:
    """
    On a λ-edge-expander, a partition crossed by ε ≤ λ/2 edge mass has a part
    of mass at least 1 - ε/λ.
    """
    parts = [list(part) for part in parts]
    nodes = list(G.nodes())
    masses = dict(zip(nodes, _node_masses(G, nodes)))
    owner = {}
    for i, part in enumerate(parts):
        for v in part:
            owner[v] = i
    if set(owner) != set(nodes):
        raise PreconditionError("Parts must cover every vertex exactly once")
    total = sum(w for _, _, w in G.edges(data="weight", default=1.0))
    crossing = sum(w for u, v, w in G.edges(data="weight", default=1.0) if owner[u] != owner[v]) / total
    part_masses = [sum(masses[v] for v in part) for part in parts]
    largest = max(part_masses)
    applies = lam > 0 and crossing <= lam / 2
    holds = (not applies) or largest >= 1 - crossing / lam - 1e-12
    return PartitionCheck(crossing, largest, applies, holds, part_masses)


def complete_graph_second_eigenvalue(n: int) -> float:
    """Closed form λ_2(K_n) = -1/(n-1)."""
    return -1.0 / (n - 1)