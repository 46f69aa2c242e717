"""
Exact coboundary and cosystolic expansion by exhaustive scan.

Over prime fields only one representative per coset of the target space is
visited; the ratio wt(δf)/dist(f, space) is constant on those cosets. Other
groups scan all of C^k against the enumerated target space.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional

import numpy as np

from cochains.cochain import Cochain
from cochains.groups import FiniteGroup
from cochains.spaces import (
    DEFAULT_ENUMERATION_BUDGET,
    CochainSpace,
    coboundary_rows,
    coset_representatives,
    digit_chunks,
    distance_to_space,
    mass_sums,
    space_elements,
)
from complexes.simplicial import SimplicialComplex
from errors import BudgetExceeded, CochainError, GroupError, PreconditionError
from expansion.reports import COBOUNDARY, EXHAUSTIVE, MODES, ExpansionReport
from utils.parallel import ordered_results, run_parallel

logger = logging.getLogger(__name__)

BLOCK_CELLS = 2 ** 20


@dataclass
class _ScanResult:
    ratio: Optional[Fraction] = None
    witness: Optional[tuple] = None
    systole: Optional[int] = None
    systole_witness: Optional[tuple] = None

    def merge(self, other: "_ScanResult") -> "_ScanResult":
        if other.ratio is not None and (
                self.ratio is None or (other.ratio, other.witness) < (self.ratio, self.witness)):
            self.ratio, self.witness = other.ratio, other.witness
        if other.systole is not None and (
                self.systole is None
                or (other.systole, other.systole_witness) < (self.systole, self.systole_witness)):
            self.systole, self.systole_witness = other.systole, other.systole_witness
        return self


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise PreconditionError(f"Unknown mode {mode!r}; use one of {', '.join(MODES)}")
    return mode


def distances_to_rows(rows: np.ndarray, elements: np.ndarray, masses: np.ndarray) -> np.ndarray:
    """Integer dist mass from every row to its nearest element."""
    c, n = rows.shape
    m = elements.shape[0]
    mism = (rows[:, None, :] != elements[None, :, :]).reshape(c * m, n)
    return mass_sums(mism, masses).reshape(c, m).min(axis=1)


def _lexmin(rows: np.ndarray) -> tuple:
    return min(tuple(int(x) for x in row) for row in rows)


def _scan_block(X: SimplicialComplex, k: int, group: FiniteGroup,
                rows: np.ndarray, elements: np.ndarray) -> _ScanResult:
    wd = mass_sums(coboundary_rows(group, X, k, rows) != 0, X.mass(k + 1))
    dist = distances_to_rows(rows, elements, X.mass(k))
    result = _ScanResult()
    outside = dist > 0
    if not np.any(outside):
        return result

    closed = np.flatnonzero(outside & (wd == 0))
    if closed.size:
        d = dist[closed]
        lowest = min(d)
        row = _lexmin(rows[closed[d == lowest]])
        result.systole, result.systole_witness = int(lowest), row
        result.ratio, result.witness = Fraction(0), row
        return result

    idx = np.flatnonzero(outside)
    ratios = wd[idx].astype(float) / dist[idx].astype(float)
    lowest = ratios.min()
    near = idx[ratios <= lowest * (1 + 1e-9)]
    best = min((Fraction(int(wd[i]), int(dist[i])), tuple(int(x) for x in rows[i])) for i in near)
    result.ratio, result.witness = best
    return result


def _blocks(X: SimplicialComplex, k: int, group: FiniteGroup, space: CochainSpace,
            elements: np.ndarray) -> Iterable[np.ndarray]:
    n = X.face_count(k)
    rows_per_block = max(1, BLOCK_CELLS // max(1, elements.shape[0] * n))
    if group.prime_field is not None:
        return coset_representatives(X, k, group, space, chunk_size=rows_per_block)
    return digit_chunks(group.order, n, rows_per_block)


def scan_space(X: SimplicialComplex, k: int, group: FiniteGroup, space: CochainSpace,
               budget: int = DEFAULT_ENUMERATION_BUDGET, workers: int = 1,
               quiet: bool = True) -> tuple:
    """Minimum ratio over cochains outside `space`; returns (_ScanResult, work)."""
    work = group.order ** X.face_count(k)
    if work > budget:
        raise BudgetExceeded(
            f"Exhaustive h^{k} over {group.name} needs {work} evaluations, budget is {budget}",
            required=work, budget=budget)
    elements = space_elements(X, k, group, space, budget)
    logger.debug("Scanning h^%d of %s against %d elements of %s^%d",
                 k, X.name or "<complex>", elements.shape[0], space.value, k)
    blocks = _blocks(X, k, group, space, elements)

    def scan(rows):
        return _scan_block(X, k, group, rows, elements)

    merged = _ScanResult()
    if workers <= 1:
        for rows in blocks:
            merged.merge(scan(rows))
        return merged, work

    results, errors = run_parallel(scan, list(blocks), workers=workers, quiet=quiet,
                                   desc=f"h^{k} scan")
    if errors:
        raise CochainError(f"Scan failed: {next(iter(errors.values()))}")
    for block in ordered_results(results):
        merged.merge(block)
    return merged, work


def h_exhaustive(X: SimplicialComplex, k: int, group: FiniteGroup, mode: str = COBOUNDARY,
                 budget: int = DEFAULT_ENUMERATION_BUDGET, workers: int = 1,
                 quiet: bool = True) -> ExpansionReport:
    """
    Exact h^k(X, Γ) in coboundary or cosystolic mode.

    In coboundary mode a cocycle outside B^k makes the constant 0; the report
    then flags nontrivial cohomology and also carries the cosystolic value and
    the smallest mass of a cocycle that is not a coboundary.

    Raises:
        BudgetExceeded: if |Γ|^|X(k)| is over the enumeration budget
        PreconditionError: if k+1 exceeds the dimension
    """
    check_mode(mode)
    if not -1 <= k <= X.dimension - 1:
        raise PreconditionError(f"h^{k} needs -1 <= k <= d-1 = {X.dimension - 1}")
    if not group.is_abelian and k > 1:
        raise GroupError(f"Non-abelian expansion is defined for k <= 1, got k={k}")

    den_k = X.mass_denominator(k)
    scale = Fraction(den_k, X.mass_denominator(k + 1))

    space = CochainSpace.COBOUNDARIES if mode == COBOUNDARY else CochainSpace.COCYCLES
    scan, work = scan_space(X, k, group, space, budget, workers, quiet)
    notes: List[str] = []
    if scan.ratio is None:
        notes.append(f"every {k}-cochain lies in {space.value}^{k}")
        logger.info("No cochain outside %s^%d; h^%d is unconstrained", space.value, k, k)
        return ExpansionReport(X.name, k, group.name, mode, None, None, EXHAUSTIVE, work, notes=notes)

    value = scan.ratio * scale
    witness = Cochain(X, k, group, scan.witness)
    report = ExpansionReport(X.name, k, group.name, mode, value, witness, EXHAUSTIVE, work, notes=notes)

    if mode == COBOUNDARY:
        if scan.systole is not None:
            report.nontrivial_cohomology = True
            report.systole = Fraction(scan.systole, den_k)
            cosystolic, extra = scan_space(X, k, group, CochainSpace.COCYCLES, budget, workers, quiet)
            report.budget_used += extra
            report.cosystolic_value = cosystolic.ratio * scale if cosystolic.ratio is not None else None
            logger.info("H^%d(%s; %s) is nontrivial; systole %s", k, X.name, group.name, report.systole)
        else:
            report.cosystolic_value = value
    logger.info("h^%d(%s; %s) %s = %s", k, X.name, group.name, mode, value)
    return report


def witness_ratio(f: Cochain, space: CochainSpace, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Fraction:
    """wt(δf)/dist(f, space), recomputed from scratch for a reported witness."""
    dist = distance_to_space(f, space, budget).distance
    if dist == 0:
        raise PreconditionError("Witness lies inside the space")
    return f.coboundary().weight() / dist
