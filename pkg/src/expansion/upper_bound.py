"""
Sampling experiment for the upper bound h^k(X, F_2) ≤ 1 + 8ε on dense complexes.

A uniform f is close to no coboundary and has a heavy coboundary with good
probability; each sample records both events so the observed frequencies can
be compared with the Chernoff and second-moment estimates.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from cochains.cochain import Cochain, coboundary
from cochains.groups import cyclic
from cochains.spaces import DEFAULT_ENUMERATION_BUDGET, CochainSpace, space_elements
from complexes.simplicial import SimplicialComplex
from errors import PreconditionError
from expansion.exhaustive import distances_to_rows
from expansion.reports import exact_to_json, number_to_json

logger = logging.getLogger(__name__)


def upper_bound_epsilon(X: SimplicialComplex, k: int) -> float:
    """ε = max(√(8|X(k-1)|/|X(k)|), √(9/|X(k+1)|)); infinite without (k+1)-faces."""
    below, here, above = X.face_count(k - 1), X.face_count(k), X.face_count(k + 1)
    if above == 0 or here == 0:
        return math.inf
    return max(math.sqrt(8 * below / here), math.sqrt(9 / above))


@dataclass
class UpperBoundReport:
    complex_name: str
    level: int
    trials: int
    seed: int
    eps: float
    threshold: float
    best_ratio: Optional[Fraction]
    witness: Optional[Cochain]
    achieved: bool
    guarantee_applies: bool
    samples: int
    close_frequency: float
    light_frequency: float
    chernoff_bound: float
    variance_bound: float
    flags: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            "kind": "upper_bound",
            "params": {"complex": self.complex_name, "k": self.level, "trials": self.trials,
                       "epsilon": self.eps, "threshold": self.threshold},
            "value": number_to_json(self.best_ratio),
            "method": "sampling",
            "seed": self.seed,
            "achieved": self.achieved,
            "guarantee_applies": self.guarantee_applies,
            "samples": self.samples,
            "close_frequency": self.close_frequency,
            "light_frequency": self.light_frequency,
            "chernoff_bound": self.chernoff_bound,
            "variance_bound": self.variance_bound,
            "flags": list(self.flags),
        }
        if exact_to_json(self.best_ratio):
            doc["value_exact"] = exact_to_json(self.best_ratio)
        if self.witness is not None:
            doc["witness"] = self.witness.to_dict()
        return doc


def random_upper_bound_experiment(X: SimplicialComplex, k: int, trials: int, seed: int = 0,
                                  budget: int = DEFAULT_ENUMERATION_BUDGET,
                                  stop_when_achieved: bool = True) -> UpperBoundReport:
    """
    Sample uniform f in C^k(X, F_2) and track the smallest wt(δf)/dist(f, Z^k).

    Distances to Z^k and B^k are exact; BudgetExceeded is raised when either
    space is beyond the enumeration budget.
    """
    if k < 0:
        raise PreconditionError(f"Level must be non-negative, got {k}")
    group = cyclic(2)
    eps = upper_bound_epsilon(X, k)
    flags = []
    if X.face_count(k + 1) == 0:
        flags.append("no (k+1)-faces")
    if eps > 0.5:
        flags.append("epsilon above 1/2")
    applies = not flags
    threshold = 1 + 8 * eps

    below, here, above = X.face_count(k - 1), X.face_count(k), X.face_count(k + 1)
    exponent = below * math.log(2) - eps * eps / (1 + eps) * here if math.isfinite(eps) else math.inf
    chernoff = math.exp(exponent) if exponent < 700 else math.inf
    variance = 1 / (4 * above * eps * eps) if above and math.isfinite(eps) else math.inf

    rng = np.random.default_rng(seed)
    best_ratio, best_f = None, None
    samples = close = light = 0
    if X.face_count(k + 1) and k + 1 <= X.dimension:
        cocycles = space_elements(X, k, group, CochainSpace.COCYCLES, budget)
        coboundaries = space_elements(X, k, group, CochainSpace.COBOUNDARIES, budget)
        den = X.mass_denominator(k)
        for _ in range(trials):
            f = Cochain.random(X, k, group, rng)
            samples += 1
            wd = coboundary(f).weight()
            row = f.values[None, :]
            dist_z = Fraction(int(distances_to_rows(row, cocycles, X.mass(k))[0]), den)
            dist_b = Fraction(int(distances_to_rows(row, coboundaries, X.mass(k))[0]), den)
            close += dist_b <= Fraction(1, 2) - Fraction(repr(eps))
            light += float(1 - wd) <= 0.5 - eps
            if dist_z == 0:
                continue
            ratio = wd / dist_z
            if best_ratio is None or ratio < best_ratio:
                best_ratio, best_f = ratio, f
            if stop_when_achieved and applies and float(best_ratio) <= threshold:
                break

    achieved = best_ratio is not None and float(best_ratio) <= threshold
    logger.info("Upper-bound sampler on %s: best ratio %s, threshold %.4f, %d samples",
                X.name, best_ratio, threshold, samples)
    return UpperBoundReport(
        complex_name=X.name, level=k, trials=trials, seed=seed, eps=eps, threshold=threshold,
        best_ratio=best_ratio, witness=best_f, achieved=achieved, guarantee_applies=applies,
        samples=samples,
        close_frequency=close / samples if samples else 0.0,
        light_frequency=light / samples if samples else 0.0,
        chernoff_bound=chernoff, variance_bound=variance, flags=flags)
