"""
Cochain spaces C^k, B^k and Z^k: bases, enumeration and distances.

Prime-field coefficients go through galois linear algebra; every other group
falls back to filtered enumeration, and nearest coboundaries beyond the
enumeration budget go to the exact group-word solver.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

import galois
import networkx as nx
import numpy as np

from cochains.cochain import Cochain, coboundary, coboundary_from_facets
from cochains.groups import FiniteGroup
from cochains.solver import DEFAULT_NODE_BUDGET, GroupCSP, Term, const, var
from complexes.simplicial import SimplicialComplex
from errors import BudgetExceeded, GroupError

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_BUDGET = 2 ** 22
CHUNK_SIZE = 2 ** 14


class CochainSpace(Enum):
    ALL = "C"
    COBOUNDARIES = "B"
    COCYCLES = "Z"

    @classmethod
    def parse(cls, tag: str) -> "CochainSpace":
        for member in cls:
            if tag.upper() in (member.value, member.name):
                return member
        raise ValueError(f"Unknown cochain space {tag!r}; use C, B or Z")


@dataclass
class Nearest:
    """Closest element of a space; `preimage` is set for coboundaries found by search."""
    distance: Fraction
    witness: Cochain
    exact: bool
    preimage: Optional[Cochain] = None


# -- vectorized helpers --------------------------------------------------------------


def mass_sums(mask: np.ndarray, masses: np.ndarray) -> np.ndarray:
    """Row sums of integer masses over a boolean mask (rows x faces)."""
    if masses.dtype == object:
        return mask.astype(object) @ masses
    return mask.astype(np.int64) @ masses


def coboundary_rows(group: FiniteGroup, X: SimplicialComplex, k: int, rows: np.ndarray) -> np.ndarray:
    """δ of many k-cochains at once; rows has shape (m, |X(k)|)."""
    down = X.down_incidence(k + 1)
    facets = [rows[:, down[:, i]] for i in range(k + 2)]
    return coboundary_from_facets(group, k, facets)


def _digits(base: int, length: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    powers = base ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % base


def digit_chunks(base: int, length: int, chunk_size: int = CHUNK_SIZE) -> Iterator[np.ndarray]:
    """All length-`length` words over range(base) in lexicographic order."""
    total = base ** length
    for start in range(0, total, chunk_size):
        yield _digits(base, length, start, min(total, start + chunk_size))


# -- prime-field linear algebra --------------------------------------------------------


def coboundary_matrix(X: SimplicialComplex, k: int, p: int) -> np.ndarray:
    """Matrix of δ_k over F_p with shape (|X(k+1)|, |X(k)|)."""
    rows, cols = X.face_count(k + 1), X.face_count(k)
    M = np.zeros((rows, cols), dtype=np.int64)
    if rows and k + 1 <= X.dimension:
        down = X.down_incidence(k + 1)
        r = np.arange(rows)
        for i in range(k + 2):
            M[r, down[:, i]] = (-1) ** i % p
    return M


def _row_basis(GF, A) -> Tuple[np.ndarray, List[int]]:
    """Nonzero RREF rows of A and their pivot columns."""
    n = A.shape[1]
    if A.shape[0] == 0 or not np.any(A.view(np.ndarray)):
        return np.zeros((0, n), dtype=np.int64), []
    R = np.asarray(A.row_reduce().view(np.ndarray), dtype=np.int64)
    R = R[np.any(R != 0, axis=1)]
    pivots = [int(np.flatnonzero(row)[0]) for row in R]
    return R, pivots


def _null_basis(GF, A, n: int) -> np.ndarray:
    R, pivots = _row_basis(GF, A)
    p = GF.characteristic
    free = [c for c in range(n) if c not in set(pivots)]
    N = np.zeros((len(free), n), dtype=np.int64)
    for j, c in enumerate(free):
        N[j, c] = 1
        for i, pc in enumerate(pivots):
            N[j, pc] = (-R[i, c]) % p
    return N


def _prime(group: FiniteGroup) -> int:
    if group.prime_field is None:
        raise GroupError(f"{group.name} is not a prime field")
    return group.prime_field


def space_basis(X: SimplicialComplex, k: int, group: FiniteGroup, space: CochainSpace) -> np.ndarray:
    """Rows spanning the space over F_p, in reduced row echelon form."""
    p = _prime(group)
    GF = galois.GF(p)
    n = X.face_count(k)
    if space is CochainSpace.ALL:
        return np.eye(n, dtype=np.int64)
    if space is CochainSpace.COBOUNDARIES:
        if k == -1:
            return np.zeros((0, n), dtype=np.int64)
        M = coboundary_matrix(X, k - 1, p)
        return _row_basis(GF, GF(np.ascontiguousarray(M.T)))[0]
    if k >= X.dimension:
        return np.eye(n, dtype=np.int64)
    M = coboundary_matrix(X, k, p)
    N = _null_basis(GF, GF(M), n)
    return _row_basis(GF, GF(N))[0] if N.shape[0] else N


def space_dimension(X: SimplicialComplex, k: int, group: FiniteGroup, space: CochainSpace) -> int:
    return int(space_basis(X, k, group, space).shape[0])


def cohomology_dimension(X: SimplicialComplex, k: int, group: FiniteGroup) -> int:
    """dim H^k(X; F_p) = dim Z^k - dim B^k."""
    return (space_dimension(X, k, group, CochainSpace.COCYCLES)
            - space_dimension(X, k, group, CochainSpace.COBOUNDARIES))


def pivot_columns(basis: np.ndarray) -> List[int]:
    return [int(np.flatnonzero(row)[0]) for row in basis]


def coset_representatives(X: SimplicialComplex, k: int, group: FiniteGroup, space: CochainSpace,
                          chunk_size: int = CHUNK_SIZE) -> Iterator[np.ndarray]:
    """One vector per coset of the space: all vectors supported off its pivot columns."""
    p = _prime(group)
    basis = space_basis(X, k, group, space)
    n = X.face_count(k)
    pivots = set(pivot_columns(basis))
    free = [c for c in range(n) if c not in pivots]
    for digits in digit_chunks(p, len(free), chunk_size):
        reps = np.zeros((digits.shape[0], n), dtype=np.int64)
        reps[:, free] = digits
        yield reps


def coset_count(X: SimplicialComplex, k: int, group: FiniteGroup, space: CochainSpace) -> int:
    p = _prime(group)
    return p ** (X.face_count(k) - space_dimension(X, k, group, space))


# -- enumeration -----------------------------------------------------------------------


def space_size(X: SimplicialComplex, k: int, group: FiniteGroup, space: CochainSpace) -> int:
    """Number of elements to generate when enumerating the space."""
    n = X.face_count(k)
    if space is CochainSpace.ALL:
        return group.order ** n
    if group.prime_field is not None:
        return group.order ** space_dimension(X, k, group, space)
    if space is CochainSpace.COBOUNDARIES:
        return group.order ** X.face_count(k - 1) if k >= 0 else 1
    return group.order ** n


def iter_space_chunks(X: SimplicialComplex, k: int, group: FiniteGroup, space: CochainSpace,
                      budget: int = DEFAULT_ENUMERATION_BUDGET,
                      chunk_size: int = CHUNK_SIZE) -> Iterator[np.ndarray]:
    """Yield the elements of the space as row blocks; nothing is yielded past the budget."""
    required = space_size(X, k, group, space)
    if required > budget:
        raise BudgetExceeded(
            f"Enumerating {space.value}^{k} needs {required} elements, budget is {budget}",
            required=required, budget=budget)
    n = X.face_count(k)
    order = group.order
    if space is CochainSpace.ALL:
        yield from digit_chunks(order, n, chunk_size)
        return
    if group.prime_field is not None:
        basis = space_basis(X, k, group, space)
        for coeffs in digit_chunks(order, basis.shape[0], chunk_size):
            yield (coeffs @ basis) % order
        return
    if space is CochainSpace.COBOUNDARIES:
        if k == -1:
            yield np.zeros((1, n), dtype=np.int64)
            return
        seen = set()
        for rows in digit_chunks(order, X.face_count(k - 1), chunk_size):
            images = coboundary_rows(group, X, k - 1, rows)
            fresh = []
            for row in images:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
            if fresh:
                yield np.array(fresh, dtype=np.int64)
        return
    for rows in digit_chunks(order, n, chunk_size):
        if k >= X.dimension:
            yield rows
        else:
            closed = rows[~np.any(coboundary_rows(group, X, k, rows) != 0, axis=1)]
            if closed.shape[0]:
                yield closed


def enumerate_space(X: SimplicialComplex, k: int, group: FiniteGroup, space: CochainSpace,
                    budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[Cochain]:
    for chunk in iter_space_chunks(X, k, group, space, budget):
        for row in chunk:
            yield Cochain(X, k, group, row)


def space_elements(X: SimplicialComplex, k: int, group: FiniteGroup, space: CochainSpace,
                   budget: int = DEFAULT_ENUMERATION_BUDGET) -> np.ndarray:
    chunks = list(iter_space_chunks(X, k, group, space, budget))
    if not chunks:
        return np.zeros((0, X.face_count(k)), dtype=np.int64)
    return np.vstack(chunks)


# -- distances -------------------------------------------------------------------------


def coboundary_word(group: FiniteGroup, k: int, facet_vars: Sequence[int], target: int) -> List[Term]:
    """Word that is the identity iff δh equals `target` on a (k+1)-face."""
    if group.is_abelian:
        terms = [var(int(v), i % 2 == 1) for i, v in enumerate(facet_vars)]
    elif k == -1:
        terms = [var(int(facet_vars[0]))]
    elif k == 0:
        terms = [var(int(facet_vars[1])), var(int(facet_vars[0]), True)]
    elif k == 1:
        terms = [var(int(facet_vars[2])), var(int(facet_vars[0])), var(int(facet_vars[1]), True)]
    else:
        raise GroupError(f"Coboundary of level {k} needs an abelian group, got {group.name}")
    terms.append(const(int(target), True))
    return terms


def _gauge_roots(X: SimplicialComplex) -> List[int]:
    """Smallest vertex index of every connected component of the 1-skeleton."""
    graph = X.skeleton_graph()
    return sorted(X.index((min(component),)) for component in nx.connected_components(graph))


def nearest_coboundary(f: Cochain, node_budget: int = DEFAULT_NODE_BUDGET,
                       initial: Optional[Cochain] = None, lexicographic: bool = False) -> Nearest:
    """
    Closest δh to f by branch and bound over h.

    `initial` is a warm-start (k-1)-cochain. The result is exact when the
    search completes within the node budget. With `lexicographic`, ties between
    equally near coboundaries go to the smallest δh in face order.
    """
    X, k, group = f.complex, f.level, f.group
    if k == -1:
        zero = Cochain.zeros(X, k, group)
        return Nearest(f.weight(), zero, True, None)
    down = X.down_incidence(k)
    constraints = [coboundary_word(group, k - 1, down[t], f.values[t]) for t in range(down.shape[0])]
    weights = [int(m) for m in X.mass(k)]
    n_vars = X.face_count(k - 1)
    fixed = {}
    start = list(initial.values) if initial is not None else None
    if k == 1:
        roots = _gauge_roots(X)
        fixed = {r: 0 for r in roots}
        if start is not None:
            start = _normalize_gauge(X, group, start, roots)
    solver = GroupCSP(group, n_vars, constraints, weights, fixed=fixed)
    tie_key = None
    if lexicographic:
        def tie_key(h):
            return tuple(coboundary(Cochain(X, k - 1, group, h)).values.tolist())
    result = solver.solve(node_budget, initial=start, tie_key=tie_key)
    preimage = Cochain(X, k - 1, group, result.assignment)
    witness = coboundary(preimage)
    return Nearest(Fraction(result.cost, X.mass_denominator(k)), witness, result.exact, preimage)


def _normalize_gauge(X: SimplicialComplex, group: FiniteGroup, values: List[int], roots: List[int]) -> List[int]:
    """Right-multiply each component by the inverse of its root value; δh is unchanged."""
    graph = X.skeleton_graph()
    out = list(values)
    for component in nx.connected_components(graph):
        root = X.index((min(component),))
        shift = group.inv(values[root])
        for v in component:
            i = X.index((v,))
            out[i] = group.mul(values[i], shift)
    return out


def distance_to_space(f: Cochain, space: CochainSpace,
                      budget: int = DEFAULT_ENUMERATION_BUDGET,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> Nearest:
    """
    Exact dist(f, space) with the lexicographically smallest nearest element.

    Enumerates the space when it fits the budget; coboundaries fall back to
    branch and bound. Raises BudgetExceeded when neither finishes.
    """
    X, k, group = f.complex, f.level, f.group
    if space is CochainSpace.ALL:
        return Nearest(Fraction(0), f, True)
    masses = X.mass(k)
    try:
        best_w, best_row = None, None
        for chunk in iter_space_chunks(X, k, group, space, budget):
            w = mass_sums(chunk != f.values[None, :], masses)
            m = min(w)
            ties = chunk[w == m]
            row = ties[np.lexsort(ties.T[::-1])[0]] if ties.shape[1] else ties[0]
            if best_w is None or m < best_w or (m == best_w and tuple(row) < tuple(best_row)):
                best_w, best_row = m, row
    except BudgetExceeded:
        if space is CochainSpace.COBOUNDARIES:
            result = nearest_coboundary(f, node_budget, lexicographic=True)
            if result.exact:
                return result
            raise BudgetExceeded(
                f"Nearest coboundary search did not finish within {node_budget} nodes",
                budget=node_budget)
        raise
    return Nearest(Fraction(int(best_w), X.mass_denominator(k)),
                   Cochain(X, k, group, best_row), True)


def is_cocycle(f: Cochain) -> bool:
    if f.level >= f.complex.dimension:
        return True
    return not np.any(coboundary(f).values)


def is_coboundary(f: Cochain, budget: int = DEFAULT_ENUMERATION_BUDGET,
                  node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    if not np.any(f.values):
        return True
    if f.group.prime_field is not None:
        p = f.group.prime_field
        GF = galois.GF(p)
        basis = space_basis(f.complex, f.level, f.group, CochainSpace.COBOUNDARIES)
        stacked = np.vstack([basis, f.values[None, :] % p])
        return _row_basis(GF, GF(stacked))[0].shape[0] == basis.shape[0]
    return distance_to_space(f, CochainSpace.COBOUNDARIES, budget, node_budget).distance == 0
