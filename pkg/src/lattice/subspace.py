"""
The lattice of subspaces of F_q^n and its spherical building.

A subspace is stored as its reduced row echelon basis: a tuple of row tuples
over GF(q). That form is canonical, so equal subspaces are equal keys and
keys sort deterministically.
"""

import logging
from itertools import combinations, product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np

from complexes.simplicial import DEFAULT_FACE_BUDGET, SimplicialComplex
from errors import BudgetExceeded, LatticeError
from lattice.geometric import GeometricLattice, order_complex
from utils.parallel import ordered_results, run_parallel

logger = logging.getLogger(__name__)

Subspace = Tuple[Tuple[int, ...], ...]

SUPPORTED_FIELDS = (2, 3, 4, 5)
DEFAULT_ELEMENT_BUDGET = 200_000


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of F_q^n."""
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


class SubspaceLattice(GeometricLattice):
    """
    Subspaces of F_q^n ordered by inclusion.

    Join is the row space of the stacked bases, meet the intersection
    computed from a left null space, rank the dimension. Levels are
    enumerated on demand (echelon patterns in parallel) and cached.
    """

    homogeneous = True

    def __init__(self, n: int, q: int = 2, element_budget: int = DEFAULT_ELEMENT_BUDGET,
                 workers: int = 1):
        if q not in SUPPORTED_FIELDS:
            raise LatticeError(f"Field order {q} not supported; use one of {SUPPORTED_FIELDS}")
        if n < 1:
            raise LatticeError(f"Ambient dimension must be positive, got {n}")
        self.n = n
        self.q = q
        self.GF = galois.GF(q)
        self.element_budget = element_budget
        self.workers = workers
        self.name = f"subspace({n},{q})"
        self._levels: Dict[int, List[Subspace]] = {}
        self._joins: Dict[Tuple[Subspace, Subspace], Subspace] = {}

    # -- linear algebra -----------------------------------------------------------------

    def reduce(self, rows: Sequence[Sequence[int]]) -> Subspace:
        """Canonical basis of the row space of `rows`."""
        rows = [tuple(int(x) for x in row) for row in rows]
        if not rows:
            return ()
        if any(len(row) != self.n or not all(0 <= x < self.q for x in row) for row in rows):
            raise LatticeError(f"Rows must be vectors of F_{self.q}^{self.n}")
        R = self.GF(np.array(rows, dtype=np.int64)).row_reduce().view(np.ndarray)
        return tuple(tuple(int(x) for x in row) for row in R if np.any(row))

    def span(self, *vectors: Sequence[int]) -> Subspace:
        return self.reduce(vectors)

    @property
    def bottom(self) -> Subspace:
        return ()

    @property
    def top(self) -> Subspace:
        return tuple(tuple(int(i == j) for j in range(self.n)) for i in range(self.n))

    def rank(self, x: Subspace) -> int:
        return len(x)

    def join(self, x: Subspace, y: Subspace) -> Subspace:
        if not x:
            return y
        if not y:
            return x
        key = (x, y) if x <= y else (y, x)
        cached = self._joins.get(key)
        if cached is None:
            cached = self._joins[key] = self.reduce(x + y)
        return cached

    def meet(self, x: Subspace, y: Subspace) -> Subspace:
        if not x or not y:
            return ()
        M = self.GF(np.array(x + y, dtype=np.int64))
        N = M.left_null_space()
        if N.shape[0] == 0:
            return ()
        X = self.GF(np.array(x, dtype=np.int64))
        return self.reduce((N[:, :len(x)] @ X).view(np.ndarray).tolist())

    def leq(self, x: Subspace, y: Subspace) -> bool:
        return len(x) <= len(y) and len(self.join(x, y)) == len(y)

    # -- enumeration --------------------------------------------------------------------

    def _pattern_block(self, pivots: Tuple[int, ...]) -> List[Subspace]:
        """Every echelon basis with the given pivot columns."""
        free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, self.n) if c not in pivots]
        block = []
        for values in product(range(self.q), repeat=len(free)):
            rows = [[0] * self.n for _ in pivots]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), value in zip(free, values):
                rows[i][c] = value
            block.append(tuple(tuple(row) for row in rows))
        return block

    def elements_of_rank(self, r: int) -> List[Subspace]:
        if r < 0 or r > self.n:
            return []
        if r not in self._levels:
            count = gaussian_binomial(self.n, r, self.q)
            if count > self.element_budget:
                raise BudgetExceeded(f"{count} subspaces of dimension {r} in {self.name}",
                                     count, self.element_budget)
            patterns = list(combinations(range(self.n), r))
            results, errors = run_parallel(self._pattern_block, patterns, workers=self.workers,
                                           desc=f"Rank {r} subspaces")
            if errors:
                raise LatticeError(f"Subspace enumeration failed: {next(iter(errors.values()))}")
            level = sorted(x for block in ordered_results(results) for x in block)
            logger.debug("Enumerated %d subspaces of dimension %d in %s", len(level), r, self.name)
            self._levels[r] = level
        return list(self._levels[r])

    def element_between(self, low: Subspace, high: Subspace, r: int) -> Optional[Subspace]:
        """Extend low by the first basis rows of high that raise its dimension, up to r."""
        if not len(low) <= r <= len(high) or not self.leq(low, high):
            return None
        current = low
        for row in high:
            if len(current) == r:
                break
            extended = self.reduce(current + (row,))
            if len(extended) > len(current):
                current = extended
        return current

    def to_dict(self) -> Dict[str, Any]:
        return {"elements": sum(gaussian_binomial(self.n, r, self.q) for r in range(self.n + 1)),
                "rank": list(range(self.n + 1)), "join": f"subspace:{self.q},{self.n}",
                "atoms": gaussian_binomial(self.n, 1, self.q), "homogeneous": True,
                "name": self.name}


def subspace_lattice(n: int, q: int = 2, **kwargs) -> SubspaceLattice:
    return SubspaceLattice(n, q, **kwargs)


def spherical_building(n: int, q: int = 2, face_budget: int = DEFAULT_FACE_BUDGET) -> SimplicialComplex:
    """Type A spherical building: the order complex of the subspaces of F_q^n."""
    X = order_complex(SubspaceLattice(n, q), face_budget=face_budget)
    X.name = f"building({n},{q})"
    return X
