"""Pure weighted simplicial complexes with exact induced probabilities."""

import logging
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from errors import ComplexError

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]

DEFAULT_FACE_BUDGET = 2_000_000
WEIGHT_TOLERANCE = 1e-12

Weight = Union[int, float, str, Fraction]


def permutation_sign(sequence: Sequence) -> int:
    """Sign of the permutation sorting `sequence` (entries must be distinct)."""
    inversions = 0
    items = list(sequence)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def canonical(oriented: Sequence) -> Tuple[tuple, int]:
    """Return (sorted face, sign) for an oriented face."""
    face = tuple(sorted(oriented))
    if len(set(face)) != len(face):
        raise ComplexError(f"Repeated vertex in face {tuple(oriented)}")
    return face, permutation_sign(oriented)


def as_fraction(value: Weight) -> Fraction:
    """Convert a weight to an exact rational (floats through their decimal repr)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ComplexError(f"Invalid weight {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        return Fraction(repr(float(value)))
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as e:
        raise ComplexError(f"Invalid weight {value!r}: {e}")


class SimplicialComplex:
    """
    Pure d-dimensional complex given by its maximal faces and a distribution on them.

    Faces are sorted vertex tuples. Level k holds the faces with k+1 vertices;
    level -1 is the single empty face. Induced probabilities are kept as exact
    integer masses over a per-level denominator:

        Pr_k(t) = mass(k)[index(t)] / mass_denominator(k)

    Instances are immutable after construction.
    """

    def __init__(
        self,
        maximal_faces: Iterable[Iterable[int]],
        weights: Optional[Union[Sequence[Weight], Mapping[tuple, Weight]]] = None,
        colors: Optional[Mapping[int, int]] = None,
        labels: Optional[Mapping[int, object]] = None,
        face_budget: int = DEFAULT_FACE_BUDGET,
        name: str = "",
    ):
        tops = [tuple(sorted(int(v) for v in face)) for face in maximal_faces]
        if not tops:
            raise ComplexError("A complex needs at least one maximal face")
        for face in tops:
            if len(set(face)) != len(face):
                raise ComplexError(f"Repeated vertex in maximal face {face}")
        sizes = sorted({len(face) for face in tops})
        if len(sizes) != 1:
            raise ComplexError(f"Non-pure input: maximal faces have sizes {sizes}")
        if len(set(tops)) != len(tops):
            raise ComplexError("Duplicate maximal faces")

        self._d = sizes[0] - 1
        self.name = name
        top_weights = self._normalize_weights(tops, weights)
        order = sorted(range(len(tops)), key=lambda i: tops[i])
        tops = [tops[i] for i in order]
        top_weights = [top_weights[i] for i in order]
        self._top_weights = dict(zip(tops, top_weights))

        self._build_levels(tops, top_weights, face_budget)
        self._vertices = tuple(face[0] for face in self._faces[0]) if self._d >= 0 else ()
        self._colors = self._validate_colors(tops, colors) if colors is not None else None
        self._labels = {v: labels[v] for v in self._vertices} if labels is not None else None
        self._build_incidence()
        logger.debug("Built complex %s: d=%d, faces per level %s",
                     name or "<anonymous>", self._d, self.face_counts())

    # -- construction -----------------------------------------------------------------

    def _normalize_weights(self, tops: List[Face], weights) -> List[Fraction]:
        if weights is None:
            return [Fraction(1, len(tops))] * len(tops)
        if isinstance(weights, Mapping):
            lookup = {tuple(sorted(k)): v for k, v in weights.items()}
            try:
                raw = [lookup[face] for face in tops]
            except KeyError as e:
                raise ComplexError(f"Missing weight for maximal face {e}")
        else:
            raw = list(weights)
            if len(raw) != len(tops):
                raise ComplexError(
                    f"Got {len(raw)} weights for {len(tops)} maximal faces")
        values = [as_fraction(w) for w in raw]
        if any(w <= 0 for w in values):
            raise ComplexError("Weights must be positive")
        total = sum(values)
        if abs(float(total) - 1.0) > WEIGHT_TOLERANCE:
            raise ComplexError(f"Weights sum to {float(total)!r}, expected 1")
        return [w / total for w in values]

    def _build_levels(self, tops: List[Face], top_weights: List[Fraction], face_budget: int):
        d = self._d
        denominator = lcm(*[w.denominator for w in top_weights])
        masses: Dict[int, Dict[Face, int]] = {k: {} for k in range(-1, d + 1)}
        total = 0
        for face, weight in zip(tops, top_weights):
            m = weight.numerator * (denominator // weight.denominator)
            for k in range(-1, d + 1):
                level = masses[k]
                for sub in combinations(face, k + 1):
                    if sub in level:
                        level[sub] += m
                    else:
                        level[sub] = m
                        total += 1
            if total > face_budget:
                raise ComplexError(
                    f"Complex exceeds the face budget of {face_budget} faces")

        self._faces: Dict[int, List[Face]] = {}
        self._index: Dict[int, Dict[Face, int]] = {}
        self._mass: Dict[int, np.ndarray] = {}
        self._den: Dict[int, int] = {}
        for k in range(-1, d + 1):
            faces = sorted(masses[k])
            values = [masses[k][face] for face in faces]
            dtype = np.int64 if max(values) < 2 ** 62 else object
            self._faces[k] = faces
            self._index[k] = {face: i for i, face in enumerate(faces)}
            self._mass[k] = np.array(values, dtype=dtype)
            self._den[k] = denominator * comb(d + 1, k + 1)
        self._total_faces = total

    def _validate_colors(self, tops: List[Face], colors: Mapping[int, int]) -> Dict[int, int]:
        try:
            table = {v: int(colors[v]) for v in self._vertices}
        except KeyError as e:
            raise ComplexError(f"Vertex {e} has no color")
        palette = {table[v] for v in self._vertices}
        if len(palette) != self._d + 1:
            raise ComplexError(
                f"Improper coloring: {len(palette)} colors for dimension {self._d}")
        for face in tops:
            if {table[v] for v in face} != palette:
                raise ComplexError(f"Improper coloring: face {face} misses a color")
        return table

    def _build_incidence(self):
        self._down: Dict[int, np.ndarray] = {}
        self._up: Dict[int, List[List[Tuple[int, int]]]] = {
            k: [[] for _ in self._faces[k]] for k in range(-1, self._d)}
        for k in range(0, self._d + 1):
            lower = self._index[k - 1]
            rows = np.empty((len(self._faces[k]), k + 1), dtype=np.int64)
            for i, face in enumerate(self._faces[k]):
                for j in range(k + 1):
                    s = lower[face[:j] + face[j + 1:]]
                    rows[i, j] = s
                    self._up[k - 1][s].append((i, j))
            rows.setflags(write=False)
            self._down[k] = rows

    # -- basic queries ------------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._d

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def colors(self) -> Optional[Dict[int, int]]:
        return dict(self._colors) if self._colors is not None else None

    @property
    def is_colored(self) -> bool:
        return self._colors is not None

    @property
    def color_set(self) -> Tuple[int, ...]:
        if self._colors is None:
            return ()
        return tuple(sorted(set(self._colors.values())))

    @property
    def labels(self) -> Optional[Dict[int, object]]:
        return dict(self._labels) if self._labels is not None else None

    @property
    def top_weights(self) -> Dict[Face, Fraction]:
        return dict(self._top_weights)

    @property
    def total_faces(self) -> int:
        return self._total_faces

    def color(self, vertex: int) -> int:
        if self._colors is None:
            raise ComplexError("Complex is not partite")
        return self._colors[vertex]

    def face_counts(self) -> Dict[int, int]:
        return {k: len(faces) for k, faces in self._faces.items()}

    def faces(self, k: int) -> List[Face]:
        if k not in self._faces:
            return []
        return self._faces[k]

    def face_count(self, k: int) -> int:
        return len(self._faces.get(k, ()))

    def has_face(self, face: Iterable[int]) -> bool:
        key = tuple(sorted(face))
        return key in self._index.get(len(key) - 1, {})

    __contains__ = has_face

    def index(self, face: Iterable[int]) -> int:
        key = tuple(sorted(face))
        try:
            return self._index[len(key) - 1][key]
        except KeyError:
            raise ComplexError(f"{key} is not a face of the complex")

    def mass(self, k: int) -> np.ndarray:
        """Integer masses of level k (read with mass_denominator)."""
        return self._mass[k]

    def mass_denominator(self, k: int) -> int:
        return self._den[k]

    def probability(self, face: Iterable[int]) -> Fraction:
        key = tuple(sorted(face))
        k = len(key) - 1
        return Fraction(int(self._mass[k][self.index(key)]), self._den[k])

    def probabilities(self, k: int) -> np.ndarray:
        """Float projection of Pr_k, for spectral work."""
        return np.array([int(m) for m in self._mass[k]], dtype=float) / float(self._den[k])

    def down_incidence(self, k: int) -> np.ndarray:
        """Row i lists the facet indices of face i of level k, vertex j removed in column j."""
        return self._down[k]

    def cofaces(self, k: int, i: int) -> List[Tuple[int, int]]:
        """(coface index at level k+1, position of the missing vertex) for face i of level k."""
        return self._up[k][i]

    # -- derived complexes --------------------------------------------------------------

    def link(self, face: Iterable[int]) -> "SimplicialComplex":
        """Link X_s = {t minus s : t contains s}, weighted by the tops containing s."""
        s = tuple(sorted(face))
        if not self.has_face(s):
            raise ComplexError(f"{s} is not a face of the complex")
        if not s:
            return self
        members = set(s)
        tops, weights = [], []
        for top, weight in self._top_weights.items():
            if members.issubset(top):
                tops.append(tuple(v for v in top if v not in members))
                weights.append(weight)
        total = sum(weights)
        return SimplicialComplex(
            tops,
            weights=[w / total for w in weights],
            colors=self._colors,
            labels=self._labels,
            name=f"{self.name}/link{s}",
        )

    def color_restriction(self, colors: Iterable[int]) -> "SimplicialComplex":
        """X^F with the induced distribution Pr^F(s) = sum of Pr_d over tops containing s."""
        if self._colors is None:
            raise ComplexError("Color restriction needs a partite complex")
        chosen = set(colors)
        if not chosen:
            raise ComplexError("Color set must be nonempty")
        unknown = chosen - set(self.color_set)
        if unknown:
            raise ComplexError(f"Unknown colors {sorted(unknown)}")
        restricted: Dict[Face, Fraction] = {}
        for top, weight in self._top_weights.items():
            sub = tuple(v for v in top if self._colors[v] in chosen)
            restricted[sub] = restricted.get(sub, Fraction(0)) + weight
        return SimplicialComplex(
            list(restricted),
            weights=list(restricted.values()),
            colors=self._colors,
            labels=self._labels,
            name=f"{self.name}^{sorted(chosen)}",
        )

    def star(self, face: Iterable[int], k: int) -> Dict[Face, Fraction]:
        """Star_k(r): the k-faces containing r, with their Pr_k mass."""
        r = tuple(sorted(face))
        if not self.has_face(r):
            raise ComplexError(f"{r} is not a face of the complex")
        if not len(r) - 1 <= k <= self._d:
            raise ComplexError(f"Level {k} out of range for face {r}")
        return {t: Fraction(int(self._mass[k][i]), self._den[k])
                for i, t in zip(self.star_indices(r, k), self.star_faces(r, k))}

    def star_faces(self, r: Face, k: int) -> List[Face]:
        members = set(r)
        return [t for t in self._faces[k] if members.issubset(t)]

    def star_indices(self, r: Face, k: int) -> List[int]:
        members = set(r)
        return [i for i, t in enumerate(self._faces[k]) if members.issubset(t)]

    def skeleton_graph(self) -> nx.Graph:
        """1-skeleton with Pr_1 edge weights and Pr_0 vertex masses."""
        graph = nx.Graph()
        for v, p in zip(self._vertices, self.probabilities(0) if self._d >= 0 else []):
            graph.add_node(v, mass=float(p))
        if self._d >= 1:
            for (u, v), p in zip(self._faces[1], self.probabilities(1)):
                graph.add_edge(u, v, weight=float(p))
        return graph

    # -- comparison ---------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self._d == other._d
                and self._top_weights == other._top_weights
                and self._colors == other._colors)

    def __hash__(self) -> int:
        return hash((self._d, tuple(self._faces[self._d])))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return (f"<SimplicialComplex{label} d={self._d} "
                f"vertices={len(self._vertices)} tops={len(self._faces[self._d])}>")
