"""
Non-abelian cones on three-color restrictions of lattice order complexes.

A non-abelian cone fixes an apex v_0, a walk P_u from v_0 to every vertex,
and for every edge (u, w) a contraction of the loop P_u ∘ (u, w) ∘ P_w^{-1}:
a sequence of loops, each obtained from the previous one by backtracking
rewrites and a single triangle rewrite, ending at a loop that backtracks to
v_0. The diameter is the longest contraction.

Contractions are built in two phases. First the unique vertex of the top
color (if any) is pushed out of the loop with at most three triangle
rewrites. The remaining loop lies below some y of the top color; inserting
y by backtracking and sweeping (y, x, x') → (y, x') along the loop leaves
(v_0, y, x_1, y, ..., y, v_0), which backtracks to v_0.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from cones.abelian import _face_from_key, face_key
from cones.chains import _freeze, _thaw
from cones.loops import Walk, bt_reduce, check_walk, compose, inverse, tr_step
from errors import ConeConstructionError, LoopError, SuitabilityError
from expansion.bounds import nonabelian_cone_bound
from lattice.geometric import LatticeView, Vertex
from utils.parallel import ordered_results, run_parallel

logger = logging.getLogger(__name__)

Edge = Tuple[Vertex, Vertex]

DIAMETER_BOUND = 9


@dataclass
class ContractionStep:
    witness: Walk
    position: int
    triangle: Tuple[Vertex, Vertex, Vertex]
    remove: bool
    result: Walk

    def to_dict(self) -> Dict[str, Any]:
        return {"witness": [_thaw(v) for v in self.witness], "position": self.position,
                "triangle": [_thaw(v) for v in self.triangle], "remove": self.remove,
                "result": [_thaw(v) for v in self.result]}

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> "ContractionStep":
        walk = lambda key: tuple(_freeze(v) for v in doc[key])
        return cls(walk("witness"), int(doc["position"]), walk("triangle"),
                   bool(doc["remove"]), walk("result"))


@dataclass
class Contraction:
    edge: Edge
    start: Walk
    steps: List[ContractionStep] = field(default_factory=list)

    def loops(self) -> List[Walk]:
        return [self.start] + [step.result for step in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass
class NonAbelianCone:
    """Apex, paths and per-edge contractions; edges are stored in sorted order."""
    view: LatticeView
    apex: Vertex
    paths: Dict[Vertex, Walk] = field(default_factory=dict)
    contractions: Dict[Edge, Contraction] = field(default_factory=dict)

    def diameter(self) -> int:
        return max((len(c) for c in self.contractions.values()), default=0)

    def contraction(self, u: Vertex, w: Vertex) -> List[Walk]:
        """Loops of T_uw; T_wu runs through the inverse loops."""
        if (u, w) in self.contractions:
            return self.contractions[(u, w)].loops()
        return [inverse(loop) for loop in self.contractions[(w, u)].loops()]

    def bound(self, k_top: int = 2):
        return nonabelian_cone_bound(max(self.diameter(), 1), k_top)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "colors": list(self.view.colors),
            "lattice": self.view.lattice.to_dict(),
            "apex": _thaw(self.apex),
            "diameter": self.diameter(),
            "paths": {face_key((u,)): [_thaw(v) for v in path] for u, path in sorted(self.paths.items())},
            "contractions": {face_key(e): [[_thaw(v) for v in loop] for loop in c.loops()]
                             for e, c in sorted(self.contractions.items())},
            "steps": {face_key(e): [s.to_dict() for s in c.steps]
                      for e, c in sorted(self.contractions.items())},
        }

    @classmethod
    def from_dict(cls, doc: Dict[str, Any], view: LatticeView) -> "NonAbelianCone":
        cone = cls(view, _freeze(doc["apex"]))
        for key, path in doc.get("paths", {}).items():
            cone.paths[_face_from_key(key)[0]] = tuple(_freeze(v) for v in path)
        steps = doc.get("steps", {})
        for key, loops in doc.get("contractions", {}).items():
            edge = _face_from_key(key)
            start = tuple(_freeze(v) for v in loops[0])
            cone.contractions[edge] = Contraction(
                edge, start, [ContractionStep.from_dict(s) for s in steps.get(key, [])])
        return cone


def check_triple_colors(colors: Sequence[int]):
    """Three colors with 2 i_0 ≤ i_1 and 3 i_1 ≤ i_2, or exactly (1, 2, 3)."""
    if len(colors) != 3:
        raise SuitabilityError(f"Non-abelian cones need three colors, got {list(colors)}")
    i0, i1, i2 = colors
    if tuple(colors) != (1, 2, 3) and not (2 * i0 <= i1 and 3 * i1 <= i2):
        raise SuitabilityError(f"Colors {list(colors)} violate 2i_0 <= i_1, 3i_1 <= i_2")


class _ContractionBuilder:
    def __init__(self, cone: NonAbelianCone):
        self.cone = cone
        self.view = cone.view
        self.i0, self.i1, self.i2 = cone.view.colors

    def _linking(self, vertices: Iterable[Vertex], color: int) -> Vertex:
        vertices = list(vertices)
        w = self.view.linking_vertex(vertices, color)
        if w is None:
            raise ConeConstructionError(f"No vertex of color {color} joins {sorted(vertices)}")
        return w

    def path(self, u: Vertex) -> Walk:
        v0 = self.cone.apex
        if u == v0:
            return (v0,)
        if self.view.adjacent(v0, u):
            return (v0, u)
        if u[0] == self.i0:
            return (v0, self._linking([v0, u], self.i1), u)
        v2 = self._linking([u], self.i0)
        v1 = self._linking([v0, v2], self.i1)
        return (v0, v1, v2, u)

    def _apply(self, steps: List[ContractionStep], walk: Walk, position: int,
               triangle: Tuple, remove: bool) -> Walk:
        result = tr_step(walk, position, triangle, remove, self.view.has_face)
        steps.append(ContractionStep(walk, position, tuple(triangle), remove, result))
        return result

    def _drop_top_color(self, loop: Walk, steps: List[ContractionStep]) -> Walk:
        """Rewrite away the vertex of the top color, if any."""
        while True:
            loop = bt_reduce(loop)
            tops = [p for p, v in enumerate(loop) if v[0] == self.i2]
            if not tops:
                return loop
            p = tops[0]
            if p == 0 or p == len(loop) - 1:
                raise ConeConstructionError("The apex cannot have the top color")
            x, prev, nxt = loop[p], loop[p - 1], loop[p + 1]
            if self.view.adjacent(prev, nxt):
                loop = self._apply(steps, loop, p - 1, (prev, x, nxt), True)
            elif prev[0] == self.i0 and nxt[0] == self.i0:
                middle = self._linking([prev, nxt, x], self.i1)
                loop = self._apply(steps, loop, p - 1, (prev, middle, x), False)
                loop = self._apply(steps, loop, p, (middle, x, nxt), True)
            elif prev[0] == self.i1 and p >= 2 and self.view.adjacent(loop[p - 2], x):
                loop = self._apply(steps, loop, p - 2, (loop[p - 2], prev, x), True)
            elif nxt[0] == self.i1 and p + 2 < len(loop) and self.view.adjacent(x, loop[p + 2]):
                loop = self._apply(steps, loop, p, (x, nxt, loop[p + 2]), True)
            else:
                raise ConeConstructionError(f"Cannot move {x} out of loop {loop}")

    def _sweep(self, loop: Walk, steps: List[ContractionStep]) -> Walk:
        """Cone the loop off a top-color vertex above all of it."""
        if len(loop) == 1:
            return loop
        y = self._linking(set(loop), self.i2)
        walk: List[Vertex] = []
        for x in loop[:-1]:
            walk.extend((x, y, x))
        walk.append(loop[-1])
        walk = tuple(walk)
        position = 1
        for x, x_next in zip(loop, loop[1:]):
            walk = self._apply(steps, walk, position, (y, x, x_next), True)
            position += 2
        return walk

    def contract(self, edge: Edge) -> Contraction:
        a, b = edge
        start = compose(self.cone.paths[a], (a, b), inverse(self.cone.paths[b]))
        steps: List[ContractionStep] = []
        loop = self._drop_top_color(start, steps)
        final = self._sweep(loop, steps)
        if len(bt_reduce(final)) != 1:
            raise ConeConstructionError(f"Contraction of {edge} ends at {bt_reduce(final)}")
        return Contraction(edge, start, steps)


def build_nonabelian_cone(view: LatticeView, edges: Optional[Iterable[Edge]] = None,
                          workers: int = 1, quiet: bool = True) -> NonAbelianCone:
    """
    Build apex, paths and contractions on a three-color view.

    Raises:
        SuitabilityError: if the colors do not allow the construction
        ConeConstructionError: if a required join vertex is missing
    """
    check_triple_colors(view.colors)
    cone = NonAbelianCone(view, view.first_vertex(view.colors[0]))
    builder = _ContractionBuilder(cone)
    todo = sorted({tuple(sorted(e)) for e in edges}) if edges is not None else view.faces(1)
    for edge in todo:
        if not view.has_face(edge):
            raise ConeConstructionError(f"{edge} is not an edge of {view}")
    for v in sorted({v for e in todo for v in e}):
        cone.paths[v] = builder.path(v)

    results, errors = run_parallel(builder.contract, todo, workers=workers, quiet=quiet,
                                   desc="Contractions")
    if errors:
        first = min(errors)
        raise ConeConstructionError(f"Contraction of {todo[first]} failed: {errors[first]}")
    for edge, contraction in zip(todo, ordered_results(results)):
        cone.contractions[edge] = contraction
    logger.info("Built non-abelian cone on %s: %d edges, diameter %d", view, len(todo), cone.diameter())
    return cone


@dataclass
class NonAbelianCheck:
    valid: bool
    diameter: int
    violations: List[str]

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "nonabelian_cone", "valid": self.valid, "diameter": self.diameter,
                "violations": list(self.violations)}


def verify_nonabelian_cone(cone: NonAbelianCone) -> NonAbelianCheck:
    """Replay every path and contraction step; violations are collected, not raised."""
    view, v0 = cone.view, cone.apex
    violations: List[str] = []
    for u, path in sorted(cone.paths.items()):
        try:
            check_walk(path, view.has_face)
        except LoopError as e:
            violations.append(f"path to {u}: {e}")
            continue
        if path[0] != v0 or path[-1] != u:
            violations.append(f"path to {u} runs from {path[0]} to {path[-1]}")

    for edge, contraction in sorted(cone.contractions.items()):
        a, b = edge
        if not view.has_face(edge):
            violations.append(f"{edge} is not an edge")
            continue
        if a not in cone.paths or b not in cone.paths:
            violations.append(f"{edge} has no paths")
            continue
        expected = compose(cone.paths[a], (a, b), inverse(cone.paths[b]))
        if contraction.start != expected:
            violations.append(f"{edge}: contraction does not start at P_u(u,w)P_w^-1")
            continue
        current = contraction.start
        for n, step in enumerate(contraction.steps):
            if bt_reduce(step.witness) != bt_reduce(current):
                violations.append(f"{edge} step {n}: witness is not a backtracking of the previous loop")
                break
            try:
                result = tr_step(step.witness, step.position, step.triangle, step.remove, view.has_face)
            except LoopError as e:
                violations.append(f"{edge} step {n}: {e}")
                break
            if bt_reduce(result) != bt_reduce(step.result):
                violations.append(f"{edge} step {n}: recorded loop differs from the rewrite")
                break
            current = step.result
        else:
            if bt_reduce(current) != (v0,):
                violations.append(f"{edge}: final loop {bt_reduce(current)} is not trivial")
    if violations:
        logger.warning("Non-abelian cone check found %d violations", len(violations))
    return NonAbelianCheck(not violations, cone.diameter(), violations)
