"""Constructors for the complexes used throughout the library and its tests."""

from itertools import combinations, product
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from complexes.simplicial import DEFAULT_FACE_BUDGET, SimplicialComplex
from errors import ComplexError


def build_complex(
    maximal_faces: Iterable[Iterable[int]],
    weights=None,
    colors: Optional[Mapping[int, int]] = None,
    labels: Optional[Mapping[int, object]] = None,
    face_budget: int = DEFAULT_FACE_BUDGET,
    name: str = "",
) -> SimplicialComplex:
    """Build a fully indexed complex; weights default to uniform on the maximal faces."""
    return SimplicialComplex(maximal_faces, weights=weights, colors=colors,
                             labels=labels, face_budget=face_budget, name=name)


def complete_complex(n: int, d: int, face_budget: int = DEFAULT_FACE_BUDGET) -> SimplicialComplex:
    """All (d+1)-subsets of n vertices, uniform weights."""
    if d < 0 or d + 1 > n:
        raise ComplexError(f"Cannot build a {d}-dimensional complete complex on {n} vertices")
    return SimplicialComplex(combinations(range(n), d + 1),
                             face_budget=face_budget, name=f"complete({n},{d})")


def complete_partite_complex(part_sizes: Sequence[int],
                             face_budget: int = DEFAULT_FACE_BUDGET) -> SimplicialComplex:
    """
    Complete partite complex: one vertex from each part per maximal face.

    Vertices are numbered part by part; part i gets color i.
    """
    if not part_sizes or any(size < 1 for size in part_sizes):
        raise ComplexError(f"Invalid part sizes {list(part_sizes)}")
    parts, colors, start = [], {}, 0
    for color, size in enumerate(part_sizes):
        part = list(range(start, start + size))
        parts.append(part)
        colors.update({v: color for v in part})
        start += size
    label = "x".join(str(s) for s in part_sizes)
    return SimplicialComplex(product(*parts), colors=colors,
                             face_budget=face_budget, name=f"partite({label})")


def random_complex(n: int, d: int, count: int, seed: int = 0) -> SimplicialComplex:
    """Pure complex on `count` distinct random (d+1)-subsets of n vertices."""
    available = comb(n, d + 1)
    if d < 0 or d + 1 > n or not 1 <= count <= available:
        raise ComplexError(f"Cannot draw {count} faces of dimension {d} on {n} vertices")
    rng = np.random.default_rng(seed)
    chosen = set()
    while len(chosen) < count:
        face = tuple(sorted(int(v) for v in rng.choice(n, size=d + 1, replace=False)))
        chosen.add(face)
    return SimplicialComplex(sorted(chosen), name=f"random({n},{d},{count},seed={seed})")
