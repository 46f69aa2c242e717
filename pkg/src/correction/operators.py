"""
Averaging operators on real functions over faces.

D_k averages a level-k function down to level k-1 under the induced
conditional distribution, U_{k-1} averages up and is its adjoint, and
N_{k→j} samples a (k+1)-face over r and then a k-face of it missing some
vertex of r. All three are returned as scipy.sparse matrices acting on
value vectors in face-index order.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np
from scipy import sparse

from complexes.simplicial import SimplicialComplex
from errors import PreconditionError

logger = logging.getLogger(__name__)


@dataclass
class FaceFunction:
    """Real function on X(level) with ⟨f, g⟩ = E_{Pr_level}[f g]."""
    complex: SimplicialComplex
    level: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(-1)
        expected = self.complex.face_count(self.level)
        if self.values.shape != (expected,):
            raise PreconditionError(f"Expected {expected} values on level {self.level}")
        if not np.all(np.isfinite(self.values)):
            raise PreconditionError("Face functions must be finite")

    @classmethod
    def constant(cls, X: SimplicialComplex, level: int, c: float) -> "FaceFunction":
        return cls(X, level, np.full(X.face_count(level), float(c)))

    @classmethod
    def indicator(cls, X: SimplicialComplex, level: int, mask) -> "FaceFunction":
        return cls(X, level, np.asarray(mask, dtype=float))

    def inner(self, other: "FaceFunction") -> float:
        if other.level != self.level:
            raise PreconditionError("Inner product needs functions on the same level")
        return float(np.sum(self.complex.probabilities(self.level) * self.values * other.values))

    def norm2(self) -> float:
        return self.inner(self)

    def mean(self) -> float:
        return float(self.complex.probabilities(self.level) @ self.values)

    def __getitem__(self, face) -> float:
        return float(self.values[self.complex.index(face)])


def _check_level(X: SimplicialComplex, k: int, low: int = -1):
    if not low <= k <= X.dimension:
        raise PreconditionError(f"Level {k} outside {low}..{X.dimension}")


def down_matrix(X: SimplicialComplex, k: int) -> sparse.csr_matrix:
    """D_k as an |X(k-1)| x |X(k)| matrix: D_k[s, t] = Pr_k(t) / ((k+1) Pr_{k-1}(s))."""
    _check_level(X, k, low=0)
    down = X.down_incidence(k)
    p_k, p_low = X.probabilities(k), X.probabilities(k - 1)
    rows = down.reshape(-1)
    cols = np.repeat(np.arange(down.shape[0]), k + 1)
    data = p_k[cols] / ((k + 1) * p_low[rows])
    shape = (X.face_count(k - 1), X.face_count(k))
    return sparse.csr_matrix((data, (rows, cols)), shape=shape)


def up_matrix(X: SimplicialComplex, k: int) -> sparse.csr_matrix:
    """U_k as an |X(k+1)| x |X(k)| matrix: the uniform average over facets."""
    _check_level(X, k + 1, low=0)
    down = X.down_incidence(k + 1)
    rows = np.repeat(np.arange(down.shape[0]), k + 2)
    cols = down.reshape(-1)
    data = np.full(rows.shape[0], 1.0 / (k + 2))
    return sparse.csr_matrix((data, (rows, cols)), shape=(X.face_count(k + 1), X.face_count(k)))


def down_power(X: SimplicialComplex, k: int, steps: int) -> sparse.csr_matrix:
    """D_k^steps = D_{k-steps+1} ... D_k, mapping level k to level k - steps."""
    if not 0 <= steps <= k + 1:
        raise PreconditionError(f"Cannot average level {k} down {steps} times")
    result = sparse.identity(X.face_count(k), format="csr")
    for level in range(k, k - steps, -1):
        result = down_matrix(X, level) @ result
    return result.tocsr()


def up_power(X: SimplicialComplex, k: int, steps: int) -> sparse.csr_matrix:
    """U_k^steps, mapping level k to level k + steps."""
    if not 0 <= steps <= X.dimension - k:
        raise PreconditionError(f"Cannot average level {k} up {steps} times")
    result = sparse.identity(X.face_count(k), format="csr")
    for level in range(k, k + steps):
        result = up_matrix(X, level) @ result
    return result.tocsr()


def walk_matrix(X: SimplicialComplex, k: int, j: int) -> sparse.csr_matrix:
    """
    N_{k→j} as an |X(j)| x |X(k)| matrix.

    For r in X(j): pick t ⊇ r in X(k+1) by Pr_{k+1}, then a k-face of t
    missing one of the j+1 vertices of r, uniformly.
    """
    if not 0 <= j <= k < X.dimension:
        raise PreconditionError(f"N_(k->j) needs 0 <= j <= k < d, got k={k}, j={j}, d={X.dimension}")
    p_top, p_j = X.probabilities(k + 1), X.probabilities(j)
    choices = comb(k + 2, j + 1) * (j + 1)
    rows, cols, data = [], [], []
    for ti, t in enumerate(X.faces(k + 1)):
        for r in combinations(t, j + 1):
            ri = X.index(r)
            for x in r:
                s = tuple(v for v in t if v != x)
                rows.append(ri)
                cols.append(X.index(s))
                data.append(p_top[ti] / (choices * p_j[ri]))
    shape = (X.face_count(j), X.face_count(k))
    return sparse.csr_matrix((data, (rows, cols)), shape=shape)


def down(f: FaceFunction, steps: int = 1) -> FaceFunction:
    X = f.complex
    return FaceFunction(X, f.level - steps, down_power(X, f.level, steps) @ f.values)


def up(f: FaceFunction, steps: int = 1) -> FaceFunction:
    X = f.complex
    return FaceFunction(X, f.level + steps, up_power(X, f.level, steps) @ f.values)


def n_walk(f: FaceFunction, j: int) -> FaceFunction:
    X = f.complex
    return FaceFunction(X, j, walk_matrix(X, f.level, j) @ f.values)


def sample_n_walk(f: FaceFunction, j: int, face: tuple, samples: int,
                  rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Monte-Carlo draws of f(s) along the N_{k→j} walk started at `face`."""
    X, k = f.complex, f.level
    rng = rng if rng is not None else np.random.default_rng(0)
    r = tuple(sorted(face))
    tops = [t for t in X.faces(k + 1) if set(r) <= set(t)]
    if not tops:
        raise PreconditionError(f"{r} lies in no face of level {k + 1}")
    weights = np.array([X.probabilities(k + 1)[X.index(t)] for t in tops])
    picks = rng.choice(len(tops), size=samples, p=weights / weights.sum())
    dropped = rng.integers(0, len(r), size=samples)
    out = np.empty(samples)
    for i, (ti, xi) in enumerate(zip(picks, dropped)):
        s = tuple(v for v in tops[ti] if v != r[xi])
        out[i] = f.values[X.index(s)]
    return out
