"""
Numerical verifiers for the operator inequality and the weight bounds on
locally minimal cocycles.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import numpy as np
from scipy.linalg import eigh

from cochains.cochain import Cochain
from cochains.spaces import DEFAULT_ENUMERATION_BUDGET, is_cocycle
from complexes.simplicial import SimplicialComplex
from correction.local_correction import as_eta
from correction.minimality import is_locally_minimal
from correction.operators import FaceFunction, down_power, walk_matrix
from errors import BudgetExceeded, PreconditionError
from expansion.exhaustive import h_exhaustive
from expansion.reports import COBOUNDARY
from expansion.spectral import DEFAULT_TOLERANCE, spectral_certificate

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 1000
MAX_DENSE_FACES = 4000


@dataclass
class WalkInequalityReport:
    k: int
    j: int
    lam: float
    trials: int
    max_violation: float
    violations: int
    min_generalized_eigenvalue: Optional[float]
    adversarial_slack: Optional[float]
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "walk_inequality",
            "params": {"k": self.k, "j": self.j, "lambda": self.lam, "trials": self.trials,
                       "tolerance": self.tolerance},
            "passed": self.passed,
            "violations": self.violations,
            "max_violation": self.max_violation,
            "min_generalized_eigenvalue": self.min_generalized_eigenvalue,
            "adversarial_slack": self.adversarial_slack,
        }


def _slack_matrix(X: SimplicialComplex, k: int, j: int, lam: float) -> np.ndarray:
    """Quadratic form of ‖D^{k-j+1}f‖² + λ‖f‖² - ⟨N f, D^{k-j} f⟩ in face coordinates."""
    N = walk_matrix(X, k, j).toarray()
    D = down_power(X, k, k - j).toarray()
    D_low = down_power(X, k, k - j + 1).toarray()
    P_j = np.diag(X.probabilities(j))
    P_low = np.diag(X.probabilities(j - 1))
    P_k = np.diag(X.probabilities(k))
    cross = D.T @ P_j @ N
    return D_low.T @ P_low @ D_low + lam * P_k - (cross + cross.T) / 2


def verify_walk_inequality(X: SimplicialComplex, k: int, j: int, trials: int = DEFAULT_TRIALS,
                           seed: int = 0, lam: Optional[float] = None,
                           tolerance: float = DEFAULT_TOLERANCE) -> WalkInequalityReport:
    """
    Check ⟨N_{k→j} f, D^{k-j} f⟩ ≤ ‖D^{k-j+1} f‖² + λ‖f‖² on random real f.

    λ defaults to the one-sided spectral constant of X. When the level is
    small enough the slack form is also diagonalized against Pr_k; its
    smallest eigenvector is tried as an extra adversarial f.
    """
    if not 0 <= j <= k < X.dimension:
        raise PreconditionError(f"Need 0 <= j <= k < d, got k={k}, j={j}, d={X.dimension}")
    if lam is None:
        lam = spectral_certificate(X).lam
    lam_used = max(float(lam), 0.0)
    N = walk_matrix(X, k, j)
    D = down_power(X, k, k - j)
    D_low = down_power(X, k, k - j + 1)
    p_k, p_j, p_low = X.probabilities(k), X.probabilities(j), X.probabilities(j - 1)

    def slack(F: np.ndarray) -> np.ndarray:
        """Column-wise slack for a matrix of functions (one per column)."""
        lhs = np.einsum("i,ij,ij->j", p_j, N @ F, D @ F)
        low = D_low @ F
        rhs = np.einsum("i,ij,ij->j", p_low, low, low) + lam_used * np.einsum("i,ij,ij->j", p_k, F, F)
        return rhs - lhs

    rng = np.random.default_rng(seed)
    n = X.face_count(k)
    F = rng.standard_normal((n, max(trials, 0)))
    if F.size:
        F /= np.sqrt(np.einsum("i,ij,ij->j", p_k, F, F))[None, :]
    values = slack(F) if F.size else np.zeros(0)

    min_eig = adversarial = None
    if n <= MAX_DENSE_FACES:
        S = _slack_matrix(X, k, j, lam_used)
        eigenvalues, vectors = eigh(S, np.diag(p_k))
        min_eig = float(eigenvalues[0])
        adversarial = float(slack(vectors[:, :1])[0])
        values = np.append(values, adversarial)
    else:
        logger.debug("Skipping dense eigen check on %d faces", n)

    bad = values < -tolerance
    worst = float(max(0.0, -values.min())) if values.size else 0.0
    logger.info("Walk inequality k=%d j=%d on %s: %d violations, max %.3g",
                k, j, X.name, int(bad.sum()), worst)
    return WalkInequalityReport(k, j, float(lam), trials, worst, int(bad.sum()),
                                min_eig, adversarial, tolerance)


# -- locally minimal cocycles -------------------------------------------------------


@dataclass
class PointCheck:
    face: tuple
    level: int
    beta: Optional[Fraction]
    walk: float
    averaged: float
    bound: Optional[float]
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"face": list(self.face), "level": self.level,
                "beta": None if self.beta is None else float(self.beta),
                "walk": self.walk, "averaged": self.averaged, "bound": self.bound, "holds": self.holds}


@dataclass
class KeyInequalityReport:
    eta: Fraction
    checks: List[PointCheck] = field(default_factory=list)
    aggregate: Dict[int, Dict[str, float]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks) and all(a["holds"] for a in self.aggregate.values())

    def failures(self) -> List[PointCheck]:
        return [c for c in self.checks if not c.holds]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "key_inequality",
            "params": {"eta": float(self.eta)},
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "aggregate": {str(j): a for j, a in self.aggregate.items()},
        }


BetaSpec = Union[None, int, float, Fraction, Mapping[tuple, Any]]


def _link_beta(X: SimplicialComplex, r: tuple, level: int, g: Cochain, budget: int) -> Optional[Fraction]:
    report = h_exhaustive(X.link(r), level, g.group, COBOUNDARY, budget)
    return report.value


def verify_key_inequality(g: Cochain, eta, beta_link: BetaSpec = None,
                     faces: Optional[Sequence[tuple]] = None,
                     budget: int = DEFAULT_ENUMERATION_BUDGET,
                     tolerance: float = DEFAULT_TOLERANCE) -> KeyInequalityReport:
    """
    Check N_{k→j}h(r) ≥ β/(j+1)·(D^{k-j}h(r) - η) for h = 1_{g≠0}.

    β is the coboundary constant of the link X_r at level k-j-1: computed
    exhaustively when `beta_link` is None, otherwise taken from a scalar or
    a per-face mapping. Every face of levels 0..k-1 is checked unless
    `faces` narrows the set; the inner-product form of the inequality is
    reported per level as the aggregate.

    Raises:
        PreconditionError: if g is not an abelian η-locally minimal cocycle
    """
    threshold = as_eta(eta)
    X, k = g.complex, g.level
    if not g.group.is_abelian:
        raise PreconditionError("The walk inequality check needs abelian coefficients")
    if k >= X.dimension:
        raise PreconditionError(f"Level {k} has no cofaces in a complex of dimension {X.dimension}")
    if not is_cocycle(g):
        raise PreconditionError("g is not a cocycle")
    minimality = is_locally_minimal(g, threshold, budget)
    if not minimality.minimal:
        raise PreconditionError(f"g is not {threshold}-locally minimal at {minimality.face}")

    h = FaceFunction.indicator(X, k, g.nonzero_mask())
    wanted = None if faces is None else {tuple(sorted(r)) for r in faces}
    report = KeyInequalityReport(threshold)
    eta_f = float(threshold)

    for j in range(0, k):
        walk = walk_matrix(X, k, j) @ h.values
        averaged = down_power(X, k, k - j) @ h.values
        p_j = X.probabilities(j)
        lhs_total = rhs_total = 0.0
        for ri, r in enumerate(X.faces(j)):
            if wanted is not None and r not in wanted:
                continue
            if beta_link is None:
                try:
                    beta = _link_beta(X, r, k - j - 1, g, budget)
                except BudgetExceeded:
                    logger.warning("Link of %s too large for an exhaustive constant", r)
                    beta = None
            elif isinstance(beta_link, Mapping):
                beta = beta_link.get(r)
                beta = None if beta is None else Fraction(str(beta))
            else:
                beta = Fraction(str(beta_link))
            if beta is None:
                report.checks.append(PointCheck(r, j, None, float(walk[ri]), float(averaged[ri]), None, True))
                continue
            bound = float(beta) / (j + 1) * (float(averaged[ri]) - eta_f)
            holds = float(walk[ri]) >= bound - tolerance
            report.checks.append(PointCheck(r, j, beta, float(walk[ri]), float(averaged[ri]), bound, holds))
            lhs_total += p_j[ri] * float(walk[ri]) * float(averaged[ri])
            rhs_total += p_j[ri] * bound * float(averaged[ri])
        report.aggregate[j] = {"lhs": lhs_total, "rhs": rhs_total, "holds": lhs_total >= rhs_total - tolerance}
    logger.info("Walk inequality at %d faces: %s", len(report.checks), "pass" if report.passed else "FAIL")
    return report


@dataclass
class HeavyCocycleCheck:
    weight: Fraction
    bound: float
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "heavy_cocycle", "weight": float(self.weight), "bound": self.bound, "holds": self.holds}


def heavy_cocycle_bound(betas: Union[float, Fraction, Sequence], eta, lam: float, k: int) -> float:
    """∏_{ℓ<k} β_ℓ / (k+1)! - e(η + λ)."""
    if isinstance(betas, (int, float, Fraction, str)):
        betas = [betas] * k
    if len(betas) != k:
        raise PreconditionError(f"Expected {k} link constants, got {len(betas)}")
    product = Fraction(1)
    for b in betas:
        product *= Fraction(str(b))
    return float(product / factorial(k + 1)) - math.e * (float(eta) + float(lam))


def verify_heavy_cocycle(g: Cochain, eta, betas, lam: float) -> HeavyCocycleCheck:
    """A non-zero η-locally minimal cocycle weighs at least the heavy-cocycle bound."""
    threshold = as_eta(eta)
    bound = heavy_cocycle_bound(betas, threshold, lam, g.level)
    weight = g.weight()
    holds = weight == 0 or float(weight) >= bound - DEFAULT_TOLERANCE
    return HeavyCocycleCheck(weight, bound, holds)
