"""Finite coefficient groups backed by multiplication tables."""

from itertools import permutations
from typing import Optional, Sequence, Tuple

import numpy as np

from errors import GroupError

MAX_CYCLIC_ORDER = 64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n ** 0.5) + 1))


class FiniteGroup:
    """
    Finite group on elements 0..n-1 with identity 0.

    `table[a, b]` is the product a*b. Elements are plain integers so cochains can
    store them in numpy arrays and multiply whole arrays with `table[a, b]`.
    """

    def __init__(self, name: str, table, labels: Optional[Sequence] = None,
                 prime_field: Optional[int] = None):
        self.name = name
        self.table = np.asarray(table, dtype=np.int64)
        self.table.setflags(write=False)
        n = self.table.shape[0]
        self.labels: Tuple = tuple(labels) if labels is not None else tuple(range(n))
        self.inverse = np.empty(n, dtype=np.int64)
        for a in range(n):
            self.inverse[a] = int(np.flatnonzero(self.table[a] == 0)[0])
        self.inverse.setflags(write=False)
        self.is_abelian = bool(np.array_equal(self.table, self.table.T))
        self.prime_field = prime_field

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def product(self, elements: Sequence[int]) -> int:
        acc = 0
        for e in elements:
            acc = int(self.table[acc, e])
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.name == other.name and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.name, self.table.tobytes()))

    def __repr__(self) -> str:
        kind = "abelian" if self.is_abelian else "non-abelian"
        return f"<FiniteGroup {self.name} order={self.order} {kind}>"


def validate_table(table) -> np.ndarray:
    """Check the group axioms for a table with identity 0."""
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupError("Group table must be a nonempty square matrix")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise GroupError("Group table is not closed")
    expected = np.arange(n)
    if not (np.array_equal(t[0], expected) and np.array_equal(t[:, 0], expected)):
        raise GroupError("Element 0 must be the identity")
    for a in range(n):
        if len(set(t[a].tolist())) != n or len(set(t[:, a].tolist())) != n:
            raise GroupError("Group table is not a Latin square")
    left = t[t[:, :, None], np.arange(n)[None, None, :]]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]
    if not np.array_equal(left, right):
        raise GroupError("Group table is not associative")
    return t


def from_table(table, name: str = "custom", labels: Optional[Sequence] = None) -> FiniteGroup:
    return FiniteGroup(name, validate_table(table), labels=labels)


def cyclic(m: int) -> FiniteGroup:
    if not 1 <= m <= MAX_CYCLIC_ORDER:
        raise GroupError(f"Cyclic groups are supported for orders 1..{MAX_CYCLIC_ORDER}, got {m}")
    a = np.arange(m)
    table = (a[:, None] + a[None, :]) % m
    return FiniteGroup(f"Z{m}", table, prime_field=m if _is_prime(m) else None)


def symmetric(n: int) -> FiniteGroup:
    """S_n for n in {3, 4}; element 0 is the identity permutation."""
    if n not in (3, 4):
        raise GroupError(f"Symmetric groups are supported for n in (3, 4), got {n}")
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.empty((len(perms), len(perms)), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            # (p*q)(x) = p(q(x))
            table[i, j] = index[tuple(p[q[x]] for x in range(n))]
    return FiniteGroup(f"S{n}", table, labels=perms)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with element (a, b) stored as a*|H| + b."""
    m = h.order
    n = g.order * m
    idx = np.arange(n)
    a, b = idx // m, idx % m
    table = g.table[a[:, None], a[None, :]] * m + h.table[b[:, None], b[None, :]]
    labels = [(x, y) for x in g.labels for y in h.labels]
    return FiniteGroup(f"{g.name}x{h.name}", table, labels=labels)


def parse_group(spec: str) -> FiniteGroup:
    """Parse names such as "Z2", "F2", "S3" or "Z2xZ2"."""
    parts = [p.strip() for p in spec.strip().split('x') if p.strip()]
    if not parts:
        raise GroupError(f"Empty group name {spec!r}")
    groups = [_parse_factor(p) for p in parts]
    result = groups[0]
    for factor in groups[1:]:
        result = direct_product(result, factor)
    return result


def _parse_factor(name: str) -> FiniteGroup:
    upper = name.upper()
    try:
        if upper.startswith('Z') or upper.startswith('F'):
            order = int(upper[1:])
            if upper.startswith('F') and not _is_prime(order):
                raise GroupError(f"F{order} is not a prime field")
            return cyclic(order)
        if upper.startswith('S'):
            return symmetric(int(upper[1:]))
    except ValueError:
        pass
    raise GroupError(f"Unknown group {name!r}; use Z<m>, F<p>, S3, S4 or products like Z2xZ2")
