"""Local minimality of cochains: no link restriction can be lightened by more than η."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import networkx as nx
import numpy as np

from cochains.cochain import Cochain
from cochains.solver import DEFAULT_NODE_BUDGET, GroupCSP, const, var
from cochains.spaces import DEFAULT_ENUMERATION_BUDGET, CochainSpace, distance_to_space
from complexes.simplicial import SimplicialComplex
from correction.local_correction import as_eta
from errors import BudgetExceeded, GroupError

logger = logging.getLogger(__name__)


@dataclass
class MinimalityResult:
    minimal: bool
    face: Optional[tuple] = None
    level: Optional[int] = None
    improvement: Fraction = Fraction(0)
    shift: Optional[Tuple[int, ...]] = None
    exhaustive: bool = True

    def to_dict(self) -> Dict[str, Any]:
        doc = {"minimal": self.minimal, "exhaustive": self.exhaustive}
        if self.face is not None:
            doc.update(face=list(self.face), level=self.level, improvement=float(self.improvement))
        return doc


def _best_constant(values: np.ndarray, masses: np.ndarray, order: int) -> Tuple[int, int]:
    """Group element carrying the most mass of `values`, and that mass."""
    totals = [int(sum(int(m) for m in masses[values == g])) for g in range(order)]
    best = int(np.argmax(totals))
    return best, totals[best]


def _constant_gain(link: SimplicialComplex, values: np.ndarray, order: int) -> Tuple[Fraction, int]:
    """wt(g) - min_γ wt(γ^{-1} g) for a vertex function g on a link."""
    masses = link.mass(0)
    den = link.mass_denominator(0)
    element, kept = _best_constant(values, masses, order)
    zero_mass = int(sum(int(m) for m in masses[values == 0]))
    return Fraction(kept - zero_mass, den), element


def _link_gauge_gain(g: Cochain, v: int, node_budget: int) -> Tuple[Fraction, Tuple[int, ...], bool]:
    """
    For a level-2 non-abelian g at vertex v: wt(g_v) minus the smallest weight of
    u,w ↦ h(u)^{-1} g(v,u,w) h(w) over all h on the link vertices.
    """
    link = g.complex.link((v,))
    group = g.group
    vertices = link.faces(0)
    edges = link.faces(1)
    if not edges:
        return Fraction(0), (), True
    pos = {face[0]: i for i, face in enumerate(vertices)}
    words, current = [], []
    for u, w in edges:
        value = g.value((v, u, w))
        current.append(value)
        words.append([var(pos[u], True), const(value), var(pos[w])])
    weights = [int(m) for m in link.mass(1)]
    graph = link.skeleton_graph()
    fixed = {pos[min(component)]: 0 for component in nx.connected_components(graph)}
    solver = GroupCSP(group, len(vertices), words, weights, fixed=fixed)
    result = solver.solve(node_budget)
    den = link.mass_denominator(1)
    base = sum(w for w, value in zip(weights, current) if value != 0)
    return Fraction(base - result.cost, den), result.assignment, result.exact


def is_locally_minimal(g: Cochain, eta, budget: int = DEFAULT_ENUMERATION_BUDGET,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> MinimalityResult:
    """
    Check that wt(g_r) - dist(g_r, B(X_r)) ≤ η for every face r of level below g's.

    Returns the first violating face in level-then-index order. Raises
    BudgetExceeded when a link distance cannot be computed exactly.
    """
    threshold = as_eta(eta)
    X, k = g.complex, g.level
    group = g.group
    if not group.is_abelian:
        if k > 2:
            raise GroupError(f"Non-abelian minimality is defined for levels up to 2, got {k}")
        return _nonabelian_minimality(g, threshold, node_budget)

    for level in range(0, k):
        for r in X.faces(level):
            g_r = g.restrict_to_link(r)
            if not np.any(g_r.values):
                continue
            nearest = distance_to_space(g_r, CochainSpace.COBOUNDARIES, budget, node_budget)
            gain = g_r.weight() - nearest.distance
            if gain > threshold:
                logger.debug("Face %s violates local minimality by %s", r, gain)
                shift = tuple(int(x) for x in nearest.witness.values)
                return MinimalityResult(False, r, level, gain, shift, nearest.exact)
    return MinimalityResult(True)


def _nonabelian_minimality(g: Cochain, threshold: Fraction, node_budget: int) -> MinimalityResult:
    X, k, group = g.complex, g.level, g.group
    if k == 2:
        for v, in X.faces(0):
            gain, shift, exact = _link_gauge_gain(g, v, node_budget)
            if gain > threshold:
                return MinimalityResult(False, (v,), 0, gain, shift, exact)
            if not exact:
                raise BudgetExceeded(
                    f"Gauge search on the link of {v} did not finish within {node_budget} nodes",
                    budget=node_budget)
    for r in X.faces(k - 1) if k >= 1 else []:
        link = X.link(r)
        values = np.array([g.value(r + p) for p in link.faces(0)], dtype=np.int64)
        if not values.size:
            continue
        gain, element = _constant_gain(link, values, group.order)
        if gain > threshold:
            return MinimalityResult(False, r, len(r) - 1, gain, (element,), True)
    return MinimalityResult(True)
