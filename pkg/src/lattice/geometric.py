"""
Geometric lattices and their order complexes.

A lattice element is any hashable, sortable key. Vertices of an order
complex (or of a lazy LatticeView) are (rank, element) pairs, so sorting a
face by vertex orders it as a chain.
"""

import logging
from abc import ABC, abstractmethod
from functools import reduce
from itertools import combinations
from typing import Any, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from complexes.simplicial import DEFAULT_FACE_BUDGET, SimplicialComplex
from errors import ComplexError, LatticeError

logger = logging.getLogger(__name__)

Element = Hashable
Vertex = Tuple[int, Element]


class GeometricLattice(ABC):
    """Finite graded lattice with a rank function, join and meet."""

    name: str = ""
    homogeneous: bool = False

    @property
    @abstractmethod
    def bottom(self) -> Element:
        ...

    @property
    @abstractmethod
    def top(self) -> Element:
        ...

    @abstractmethod
    def rank(self, x: Element) -> int:
        ...

    @abstractmethod
    def join(self, x: Element, y: Element) -> Element:
        ...

    @abstractmethod
    def meet(self, x: Element, y: Element) -> Element:
        ...

    @abstractmethod
    def elements_of_rank(self, r: int) -> List[Element]:
        """All elements of rank r in increasing key order."""

    @abstractmethod
    def element_between(self, low: Element, high: Element, r: int) -> Optional[Element]:
        """A canonical element x of rank r with low ≤ x ≤ high, or None."""

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        ...

    @property
    def height(self) -> int:
        return self.rank(self.top)

    def leq(self, x: Element, y: Element) -> bool:
        return self.join(x, y) == y

    def comparable(self, x: Element, y: Element) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def atoms(self) -> List[Element]:
        return self.elements_of_rank(1)

    def elements(self) -> List[Element]:
        return [x for r in range(self.height + 1) for x in self.elements_of_rank(r)]

    def join_all(self, items: Iterable[Element]) -> Element:
        return reduce(self.join, items, self.bottom)

    def meet_all(self, items: Iterable[Element]) -> Element:
        return reduce(self.meet, items, self.top)

    def validate(self):
        """
        Exhaustively check gradedness, semimodularity and atomicity.

        Raises:
            LatticeError: naming the first offending element or pair
        """
        elements = self.elements()
        if self.rank(self.bottom) != 0:
            raise LatticeError("The bottom element must have rank 0")
        atoms = self.atoms()
        for x, y in combinations(elements, 2):
            rx, ry = self.rank(x), self.rank(y)
            if self.rank(self.join(x, y)) + self.rank(self.meet(x, y)) > rx + ry:
                raise LatticeError(f"Not semimodular at {x!r}, {y!r}")
            if rx == ry:
                if self.comparable(x, y):
                    raise LatticeError(f"Comparable elements {x!r}, {y!r} share rank {rx}")
                continue
            low, high = (x, y) if rx < ry else (y, x)
            if self.leq(high, low):
                raise LatticeError(f"Rank decreases from {high!r} up to {low!r}")
            if self.leq(low, high):
                if abs(rx - ry) > 1 and not any(
                        self.leq(low, z) and self.leq(z, high)
                        for z in self.elements_of_rank(min(rx, ry) + 1)):
                    raise LatticeError(f"Cover {low!r} < {high!r} skips ranks")
        for x in elements:
            below = [a for a in atoms if self.leq(a, x)]
            if self.join_all(below) != x:
                raise LatticeError(f"{x!r} is not a join of atoms")


def find_vertex_linking(L: GeometricLattice, elements: Iterable[Element], r: int) -> Optional[Element]:
    """
    The element of rank r comparable to every given element: it lies between
    the join of those of rank ≤ r and the meet of those above r.
    """
    items = list(elements)
    low = L.join_all(x for x in items if L.rank(x) <= r)
    high = L.meet_all(x for x in items if L.rank(x) > r)
    if L.rank(low) > r or not L.leq(low, high):
        return None
    return L.element_between(low, high, r)


class TableLattice(GeometricLattice):
    """
    Lattice on elements 0..n-1 given by ranks and a join table.

    The meet is the largest common lower bound. The constructor validates the
    input exhaustively, so keep tables desk-sized.
    """

    def __init__(self, ranks: Sequence[int], join: Sequence[Sequence[int]],
                 homogeneous: bool = False, name: str = "", validate: bool = True):
        self._ranks = [int(r) for r in ranks]
        n = len(self._ranks)
        try:
            self._join = [[int(join[x][y]) for y in range(n)] for x in range(n)]
        except (IndexError, TypeError, ValueError) as e:
            raise LatticeError(f"Join table must be {n}x{n}: {e}")
        for x in range(n):
            for y in range(n):
                z = self._join[x][y]
                if not 0 <= z < n or self._join[y][x] != z:
                    raise LatticeError(f"Join of {x}, {y} is not a commutative table entry")
        if any(self._join[x][x] != x for x in range(n)):
            raise LatticeError("Join must be idempotent")
        bottoms = [x for x in range(n) if all(self._join[x][y] == y for y in range(n))]
        tops = [x for x in range(n) if all(self._join[x][y] == x for y in range(n))]
        if len(bottoms) != 1 or len(tops) != 1:
            raise LatticeError("A lattice needs a unique bottom and top")
        self._bottom, self._top = bottoms[0], tops[0]
        self._by_rank: Dict[int, List[int]] = {}
        for x in range(n):
            self._by_rank.setdefault(self._ranks[x], []).append(x)
        self._meet = [[self._largest_lower_bound(x, y) for y in range(n)] for x in range(n)]
        self.homogeneous = homogeneous
        self.name = name or f"table({n})"
        if validate:
            self.validate()

    def _largest_lower_bound(self, x: int, y: int) -> int:
        lower = [z for z in range(len(self._ranks))
                 if self._join[z][x] == x and self._join[z][y] == y]
        best = max(lower, key=lambda z: (self._ranks[z], -z))
        if any(self._join[z][best] != best for z in lower):
            raise LatticeError(f"Elements {x}, {y} have no meet")
        return best

    @property
    def bottom(self) -> int:
        return self._bottom

    @property
    def top(self) -> int:
        return self._top

    def rank(self, x: int) -> int:
        return self._ranks[x]

    def join(self, x: int, y: int) -> int:
        return self._join[x][y]

    def meet(self, x: int, y: int) -> int:
        return self._meet[x][y]

    def elements_of_rank(self, r: int) -> List[int]:
        return list(self._by_rank.get(r, []))

    def element_between(self, low: int, high: int, r: int) -> Optional[int]:
        for z in self._by_rank.get(r, []):
            if self.leq(low, z) and self.leq(z, high):
                return z
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {"elements": len(self._ranks), "rank": list(self._ranks), "join": self._join,
                "atoms": self.atoms(), "homogeneous": self.homogeneous, "name": self.name}


class BooleanLattice(GeometricLattice):
    """Subsets of {0..n-1} as bitmasks."""

    homogeneous = True

    def __init__(self, n: int):
        if n < 1:
            raise LatticeError(f"Boolean lattice needs n >= 1, got {n}")
        self.n = n
        self.name = f"boolean({n})"

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return (1 << self.n) - 1

    def rank(self, x: int) -> int:
        return bin(x).count("1")

    def join(self, x: int, y: int) -> int:
        return x | y

    def meet(self, x: int, y: int) -> int:
        return x & y

    def leq(self, x: int, y: int) -> bool:
        return x & ~y == 0

    def elements_of_rank(self, r: int) -> List[int]:
        return sorted(sum(1 << i for i in bits) for bits in combinations(range(self.n), r))

    def element_between(self, low: int, high: int, r: int) -> Optional[int]:
        if not self.leq(low, high) or not self.rank(low) <= r <= self.rank(high):
            return None
        x = low
        for i in range(self.n):
            if self.rank(x) == r:
                break
            if high >> i & 1 and not x >> i & 1:
                x |= 1 << i
        return x

    def to_dict(self) -> Dict[str, Any]:
        return {"elements": 1 << self.n, "join": f"boolean:{self.n}", "atoms": self.atoms(),
                "homogeneous": True, "name": self.name}


def _chains(L: GeometricLattice, ranks: Sequence[int]) -> Iterator[Tuple[Element, ...]]:
    """Chains x_0 < x_1 < ... with rank(x_i) = ranks[i]."""
    levels = [L.elements_of_rank(r) for r in ranks]
    above: List[Dict[Element, List[Element]]] = []
    for lower, upper in zip(levels, levels[1:]):
        above.append({x: [y for y in upper if L.leq(x, y)] for x in lower})

    def extend(prefix: Tuple[Element, ...]) -> Iterator[Tuple[Element, ...]]:
        depth = len(prefix)
        if depth == len(ranks):
            yield prefix
            return
        for y in (levels[0] if depth == 0 else above[depth - 1][prefix[-1]]):
            yield from extend(prefix + (y,))

    yield from extend(())


def order_complex(L: GeometricLattice, colors: Optional[Iterable[int]] = None,
                  face_budget: int = DEFAULT_FACE_BUDGET) -> SimplicialComplex:
    """
    Order complex of the proper part of L, uniform on maximal chains.

    Vertices are numbered by (rank, element); colors are ranks and labels are
    the elements. With `colors`, only chains through those ranks are kept;
    for non-homogeneous lattices this restricts the full complex so the
    induced distribution is preserved.
    """
    proper = list(range(1, L.height))
    if not proper:
        raise LatticeError(f"{L.name} has no proper elements")
    wanted = sorted(set(colors)) if colors is not None else proper
    if any(c not in proper for c in wanted):
        raise ComplexError(f"Colors {wanted} outside the proper ranks 1..{L.height - 1}")
    if colors is not None and not L.homogeneous:
        return order_complex(L, None, face_budget).color_restriction(wanted)

    vertex_ids: Dict[Vertex, int] = {}
    for r in wanted:
        for x in L.elements_of_rank(r):
            vertex_ids[(r, x)] = len(vertex_ids)
    tops = []
    for chain in _chains(L, wanted):
        tops.append(tuple(vertex_ids[(r, x)] for r, x in zip(wanted, chain)))
        if len(tops) > face_budget:
            raise ComplexError(f"More than {face_budget} maximal chains in {L.name}")
    colors_map = {i: r for (r, _), i in vertex_ids.items()}
    labels = {i: x for (_, x), i in vertex_ids.items()}
    logger.debug("Order complex of %s: %d vertices, %d maximal chains", L.name, len(vertex_ids), len(tops))
    return SimplicialComplex(tops, colors=colors_map, labels=labels, face_budget=face_budget,
                             name=f"order({L.name})")


class LatticeView:
    """
    Color restriction X^F of the order complex of L, evaluated lazily.

    Faces are chains with distinct ranks in F. Nothing is materialized until
    `faces` or `to_complex` is called, so views of large lattices can still
    answer adjacency and linking queries.
    """

    def __init__(self, L: GeometricLattice, colors: Iterable[int]):
        self.lattice = L
        self.colors = tuple(sorted(set(int(c) for c in colors)))
        if not self.colors or self.colors[0] < 1 or self.colors[-1] >= L.height:
            raise ComplexError(f"Colors {self.colors} outside the proper ranks 1..{L.height - 1}")

    @property
    def dimension(self) -> int:
        return len(self.colors) - 1

    @staticmethod
    def color(v: Vertex) -> int:
        return v[0]

    @staticmethod
    def element(v: Vertex) -> Element:
        return v[1]

    def vertex(self, x: Element) -> Vertex:
        return (self.lattice.rank(x), x)

    def vertices_of_color(self, c: int) -> List[Vertex]:
        return [(c, x) for x in self.lattice.elements_of_rank(c)]

    def first_vertex(self, c: int) -> Vertex:
        L = self.lattice
        return (c, L.element_between(L.bottom, L.top, c))

    def has_face(self, face: Iterable[Vertex]) -> bool:
        chain = sorted(face)
        ranks = [v[0] for v in chain]
        if len(set(ranks)) != len(ranks) or any(r not in self.colors for r in ranks):
            return False
        return all(self.lattice.leq(a[1], b[1]) for a, b in zip(chain, chain[1:]))

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return u != v and self.has_face((u, v))

    def linking_vertex(self, face: Iterable[Vertex], c: int) -> Optional[Vertex]:
        """A vertex of color c forming a face with every given vertex."""
        x = find_vertex_linking(self.lattice, [v[1] for v in face], c)
        return None if x is None else (c, x)

    def faces(self, level: int) -> List[Tuple[Vertex, ...]]:
        if level == -1:
            return [()]
        result = []
        for ranks in combinations(self.colors, level + 1):
            result.extend(tuple(zip(ranks, chain)) for chain in _chains(self.lattice, ranks))
        return sorted(result)

    def to_complex(self, face_budget: int = DEFAULT_FACE_BUDGET) -> SimplicialComplex:
        return order_complex(self.lattice, self.colors, face_budget)

    @staticmethod
    def vertex_map(X: SimplicialComplex) -> Dict[Vertex, int]:
        """(rank, element) → vertex id for a complex built by order_complex."""
        if X.labels is None or X.colors is None:
            raise ComplexError(f"{X.name} carries no lattice labels")
        return {(X.color(v), X.labels[v]): v for v in X.vertices}

    def __repr__(self) -> str:
        return f"LatticeView({self.lattice.name}, F={list(self.colors)})"
