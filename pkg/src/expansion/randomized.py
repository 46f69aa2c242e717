"""Randomized upper-bound search for h^k when exhaustive scans are out of budget."""

import logging
import math
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from cochains.cochain import Cochain, coboundary
from cochains.groups import FiniteGroup
from cochains.solver import DEFAULT_NODE_BUDGET
from cochains.spaces import (
    DEFAULT_ENUMERATION_BUDGET,
    CochainSpace,
    Nearest,
    distance_to_space,
    nearest_coboundary,
    space_size,
)
from complexes.simplicial import SimplicialComplex
from errors import GroupError, PreconditionError
from expansion.exhaustive import check_mode
from expansion.reports import COBOUNDARY, RANDOMIZED, ExpansionReport

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 32
DEFAULT_LOCAL_STEPS = 20
PLANTED_NOISE = 0.1
COOLING = 0.9


class _Evaluator:
    """Ratio wt(δf)/dist(f, space) with the distance computed as exactly as the budgets allow."""

    def __init__(self, space: CochainSpace, budget: int, node_budget: int):
        self.space = space
        self.budget = budget
        self.node_budget = node_budget
        self.calls = 0

    def nearest(self, f: Cochain, start: Optional[Cochain]) -> Nearest:
        X, k, group = f.complex, f.level, f.group
        if self.space is CochainSpace.COBOUNDARIES and space_size(X, k, group, self.space) > self.budget:
            return nearest_coboundary(f, self.node_budget, initial=start)
        return distance_to_space(f, self.space, self.budget, self.node_budget)

    def __call__(self, f: Cochain, start: Optional[Cochain]) -> Tuple[Optional[Fraction], bool, Optional[Cochain]]:
        self.calls += 1
        near = self.nearest(f, start)
        if near.distance == 0:
            return None, True, near.preimage
        return coboundary(f).weight() / near.distance, near.exact, near.preimage


def _planted(X: SimplicialComplex, k: int, group: FiniteGroup,
             rng: np.random.Generator) -> Tuple[Cochain, Cochain]:
    """δg with a sparse random corruption, together with g as a warm start."""
    g = Cochain.random(X, k - 1, group, rng)
    values = coboundary(g).values.copy()
    n = values.shape[0]
    flips = max(1, int(round(PLANTED_NOISE * n)))
    for face in rng.choice(n, size=min(flips, n), replace=False):
        shift = int(rng.integers(1, group.order))
        values[face] = group.mul(int(values[face]), shift)
    return Cochain(X, k, group, values), g


def h_randomized(X: SimplicialComplex, k: int, group: FiniteGroup, mode: str = COBOUNDARY,
                 trials: int = DEFAULT_TRIALS, local_search_steps: int = DEFAULT_LOCAL_STEPS,
                 seed: int = 0, budget: int = DEFAULT_ENUMERATION_BUDGET,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> ExpansionReport:
    """
    Smallest ratio found by sampling and annealing single-face changes.

    Even trials start from a uniform cochain, odd trials from a corrupted
    coboundary. When every distance used for the best witness is exact the
    value is an upper bound on h^k; otherwise the report is marked inexact.
    """
    check_mode(mode)
    if not -1 <= k <= X.dimension - 1:
        raise PreconditionError(f"h^{k} needs -1 <= k <= d-1 = {X.dimension - 1}")
    if not group.is_abelian and k > 1:
        raise GroupError(f"Non-abelian expansion is defined for k <= 1, got k={k}")
    if trials <= 0:
        return ExpansionReport(X.name, k, group.name, mode, None, None, RANDOMIZED, 0,
                               exact=False, seed=seed, notes=["no trials requested"])

    space = CochainSpace.COBOUNDARIES if mode == COBOUNDARY else CochainSpace.COCYCLES
    evaluate = _Evaluator(space, budget, node_budget)
    rng = np.random.default_rng(seed)
    n = X.face_count(k)
    best: Optional[Tuple[Fraction, Cochain, bool]] = None

    for trial in range(trials):
        if trial % 2 == 0 or k == -1:
            f, start = Cochain.random(X, k, group, rng), None
        else:
            f, start = _planted(X, k, group, rng)
        ratio, exact, preimage = evaluate(f, start)
        if ratio is None:
            continue
        if best is None or ratio < best[0]:
            best = (ratio, f, exact)

        current, current_ratio = f, ratio
        warm = preimage if preimage is not None else start
        temperature = float(ratio) * 0.1 + 1e-9
        for _ in range(local_search_steps):
            values = current.values.copy()
            face = int(rng.integers(n))
            values[face] = group.mul(int(values[face]), int(rng.integers(1, group.order)))
            candidate = current.with_values(values)
            cand_ratio, cand_exact, cand_pre = evaluate(candidate, warm)
            temperature *= COOLING
            if cand_ratio is None:
                continue
            if best is None or cand_ratio < best[0]:
                best = (cand_ratio, candidate, cand_exact)
            delta = float(cand_ratio - current_ratio)
            if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                current, current_ratio = candidate, cand_ratio
                if cand_pre is not None:
                    warm = cand_pre
        logger.debug("Trial %d: best ratio so far %s", trial, best[0] if best else None)

    if best is None:
        return ExpansionReport(X.name, k, group.name, mode, None, None, RANDOMIZED, evaluate.calls,
                               exact=False, seed=seed, notes=["every sample fell inside the space"])
    ratio, witness, exact = best
    report = ExpansionReport(X.name, k, group.name, mode, ratio, witness, RANDOMIZED, evaluate.calls,
                             exact=exact, seed=seed)
    if not exact:
        report.notes.append("distance search hit the node budget; value is not a certified upper bound")
    logger.info("Randomized h^%d(%s; %s) <= %s after %d evaluations",
                k, X.name, group.name, ratio, evaluate.calls)
    return report
