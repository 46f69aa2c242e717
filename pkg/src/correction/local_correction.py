"""
η-local correction of cochains.

Repeatedly look for a face r whose star can be reassigned so that wt(δf)
drops by at least η·Pr_k[Star_k(r)], and apply the best such reassignment.
Faces are scanned by increasing level, then index; the scan restarts after
every fix. The weight of δf strictly decreases, so the loop halts.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from cochains.cochain import Cochain, coboundary, coboundary_from_facets
from cochains.groups import FiniteGroup
from cochains.solver import DEFAULT_NODE_BUDGET, GroupCSP, Term
from cochains.spaces import digit_chunks, mass_sums
from complexes.simplicial import SimplicialComplex, permutation_sign
from errors import GroupError, PreconditionError

logger = logging.getLogger(__name__)

DEFAULT_FIX_BUDGET = 2 ** 20
FIX_CHUNK = 2 ** 12


def as_eta(eta) -> Fraction:
    """Exact threshold from an int, Fraction, decimal string or float."""
    if isinstance(eta, Fraction):
        value = eta
    elif isinstance(eta, float):
        value = Fraction(repr(eta))
    else:
        value = Fraction(str(eta))
    if not 0 < value <= 1:
        raise PreconditionError(f"η must lie in (0, 1], got {eta}")
    return value


@dataclass
class StarData:
    """Faces of Star_k(r), their orientation signs and the (k+1)-faces they touch."""
    face: tuple
    level: int
    star: np.ndarray
    signs: np.ndarray
    affected: np.ndarray
    slot: np.ndarray
    star_mass: int


def star_data(X: SimplicialComplex, k: int, r: tuple) -> StarData:
    star = X.star_indices(r, k)
    faces_k = X.faces(k)
    signs = []
    for t in star:
        rest = tuple(v for v in faces_k[t] if v not in r)
        signs.append(permutation_sign(r + rest))
    position = {t: i for i, t in enumerate(star)}
    affected = sorted({a for t in star for a, _ in X.cofaces(k, t)}) if k < X.dimension else []
    affected = np.array(affected, dtype=np.int64)
    if affected.size:
        down = X.down_incidence(k + 1)[affected]
        slot = np.vectorize(lambda s: position.get(int(s), -1), otypes=[np.int64])(down)
    else:
        slot = np.zeros((0, k + 2), dtype=np.int64)
    masses = X.mass(k)
    return StarData(r, len(r) - 1, np.array(star, dtype=np.int64), np.array(signs, dtype=np.int64),
                    affected, slot, int(sum(int(masses[t]) for t in star)))


@dataclass
class Fix:
    assignment: Tuple[int, ...]
    new_values: Tuple[int, ...]
    decrease: int
    exhaustive: bool


def _shifted(group: FiniteGroup, current: np.ndarray, offsets: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """Star values after left-multiplying the oriented value r∘p by its offset."""
    plus = group.table[offsets, current[None, :]]
    minus = group.table[current[None, :], group.inverse[offsets]]
    return np.where(signs[None, :] > 0, plus, minus)


def _star_weights(f: Cochain, data: StarData, new_star: np.ndarray) -> np.ndarray:
    """Mass of δf on the affected faces for each candidate star assignment."""
    X, k, group = f.complex, f.level, f.group
    down = X.down_incidence(k + 1)[data.affected]
    m = new_star.shape[0]
    facets = []
    for i in range(k + 2):
        base = np.broadcast_to(f.values[down[:, i]], (m, data.affected.size)).copy()
        hit = data.slot[:, i] >= 0
        if np.any(hit):
            base[:, hit] = new_star[:, data.slot[hit, i]]
        facets.append(base)
    values = coboundary_from_facets(group, k, facets)
    return mass_sums(values != 0, X.mass(k + 1)[data.affected])


def _inverse_word(word: List[Term]) -> List[Term]:
    return [(v, c, not inv) for v, c, inv in reversed(word)]


def _fix_by_search(f: Cochain, data: StarData, node_budget: int) -> Fix:
    """Star reassignment through the group-word solver, for stars too large to enumerate."""
    X, k, group = f.complex, f.level, f.group
    down = X.down_incidence(k + 1)[data.affected]
    words = []
    for row, slots in zip(down, data.slot):
        facet_words = []
        for i in range(k + 2):
            value = int(f.values[row[i]])
            s = int(slots[i])
            if s < 0:
                facet_words.append([(-1, value, False)])
            elif data.signs[s] > 0:
                facet_words.append([(s, 0, False), (-1, value, False)])
            else:
                facet_words.append([(-1, value, False), (s, 0, True)])
        if group.is_abelian:
            word = []
            for i, w in enumerate(facet_words):
                word += _inverse_word(w) if i % 2 else w
        elif k == 0:
            word = facet_words[1] + _inverse_word(facet_words[0])
        else:
            word = facet_words[2] + facet_words[0] + _inverse_word(facet_words[1])
        words.append(word)
    weights = [int(m) for m in X.mass(k + 1)[data.affected]]
    solver = GroupCSP(group, data.star.size, words, weights)
    base_cost = solver.cost([0] * data.star.size)
    result = solver.solve(node_budget, initial=[0] * data.star.size)
    offsets = np.array(result.assignment, dtype=np.int64)[None, :]
    new_star = _shifted(group, f.values[data.star], offsets, data.signs)[0]
    return Fix(tuple(result.assignment), tuple(int(v) for v in new_star),
               base_cost - result.cost, result.exact)


def best_fix(f: Cochain, data: StarData, fix_budget: int = DEFAULT_FIX_BUDGET,
             node_budget: int = DEFAULT_NODE_BUDGET) -> Fix:
    """
    Star reassignment with the largest drop of wt(δf); ties keep the
    lexicographically first offset vector, so the identity wins when nothing helps.
    """
    group = f.group
    size = data.star.size
    if data.affected.size == 0:
        return Fix((0,) * size, tuple(int(v) for v in f.values[data.star]), 0, True)
    if group.order ** size > fix_budget:
        logger.debug("Star of %s has %d faces; using branch and bound", data.face, size)
        return _fix_by_search(f, data, node_budget)

    current = f.values[data.star]
    base = None
    best_weight, best_offsets, best_star = None, None, None
    for offsets in digit_chunks(group.order, size, FIX_CHUNK):
        new_star = _shifted(group, current, offsets, data.signs)
        weights = _star_weights(f, data, new_star)
        if base is None:
            base = int(weights[0])
        i = int(np.argmin(weights))
        if best_weight is None or weights[i] < best_weight:
            best_weight, best_offsets, best_star = int(weights[i]), offsets[i], new_star[i]
    return Fix(tuple(int(o) for o in best_offsets), tuple(int(v) for v in best_star),
               base - best_weight, True)


@dataclass
class CorrectionStep:
    face: tuple
    level: int
    assignment: Tuple[int, ...]
    delta_wt: Fraction
    star_mass: Fraction
    exhaustive: bool = True


@dataclass
class CorrectionTrace:
    initial: Cochain
    eta: Fraction
    final: Optional[Cochain] = None
    steps: List[CorrectionStep] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.steps)

    @property
    def exhaustive(self) -> bool:
        return all(step.exhaustive for step in self.steps)

    def distance_bound_holds(self) -> bool:
        """η·dist(f, f̃) ≤ wt(δf), checked exactly."""
        return self.eta * self.initial.distance(self.final) <= coboundary(self.initial).weight()

    def replay(self) -> bool:
        """Re-apply every step and check the recorded drops and thresholds."""
        current = self.initial
        weight = coboundary(current).weight()
        for step in self.steps:
            data = star_data(current.complex, current.level, step.face)
            offsets = np.array(step.assignment, dtype=np.int64)[None, :]
            values = current.values.copy()
            values[data.star] = _shifted(current.group, current.values[data.star], offsets, data.signs)[0]
            current = current.with_values(values)
            new_weight = coboundary(current).weight()
            drop = weight - new_weight
            if drop <= 0 or drop != step.delta_wt or drop < self.eta * step.star_mass:
                logger.warning("Replay failed at face %s: drop %s, recorded %s", step.face, drop, step.delta_wt)
                return False
            weight = new_weight
        return self.final is None or current == self.final

    def to_dict(self) -> Dict[str, Any]:
        return {
            "eta": float(self.eta),
            "steps": [{"face": list(s.face), "level": s.level, "delta_wt": float(s.delta_wt)}
                      for s in self.steps],
            "iterations": self.iterations,
        }


def correct(f: Cochain, eta, fix_budget: int = DEFAULT_FIX_BUDGET,
            node_budget: int = DEFAULT_NODE_BUDGET) -> Tuple[Cochain, CorrectionTrace]:
    """
    Run η-local correction on a k-cochain.

    Returns the corrected cochain f̃ with δf̃ η-locally minimal, and the trace
    of applied fixes.

    Raises:
        PreconditionError: if k > d-1 or η is outside (0, 1]
        GroupError: for non-abelian coefficients with k > 1
    """
    X, k, group = f.complex, f.level, f.group
    if not 0 <= k <= X.dimension - 1:
        raise PreconditionError(f"Correction needs 0 <= k <= d-1 = {X.dimension - 1}, got {k}")
    if not group.is_abelian and k > 1:
        raise GroupError(f"Non-abelian correction is defined for k <= 1, got k={k}")
    threshold = as_eta(eta)
    den_k, den_up = X.mass_denominator(k), X.mass_denominator(k + 1)

    stars: Dict[tuple, StarData] = {}
    trace = CorrectionTrace(initial=f, eta=threshold)
    current = f
    weight = int(sum(int(m) for m in X.mass(k + 1)[coboundary(f).values != 0]))
    scan = [r for level in range(0, k + 1) for r in X.faces(level)]

    while weight > 0:
        applied = False
        for r in scan:
            data = stars.get(r)
            if data is None:
                data = stars[r] = star_data(X, k, r)
            fix = best_fix(current, data, fix_budget, node_budget)
            if fix.decrease <= 0:
                continue
            star_mass = Fraction(data.star_mass, den_k)
            drop = Fraction(fix.decrease, den_up)
            if drop < threshold * star_mass:
                continue
            values = current.values.copy()
            values[data.star] = fix.new_values
            current = current.with_values(values)
            weight -= fix.decrease
            trace.steps.append(CorrectionStep(r, len(r) - 1, fix.assignment, drop, star_mass, fix.exhaustive))
            logger.debug("Fixed star of %s: wt(δf) dropped by %s", r, drop)
            applied = True
            break
        if not applied:
            break

    trace.final = current
    logger.info("Correction finished after %d fixes; wt(δf) = %s",
                trace.iterations, Fraction(weight, den_up))
    return current, trace
