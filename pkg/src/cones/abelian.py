"""
Cones over color-restricted order complexes of geometric lattices.

A cone is a family ψ_j: C_j → C_{j+1} with ∂ψ_j(s) = s - Σ_i (-1)^i ψ_{j-1}(s_i)
and ψ_{-1}(∅) = v_0. Level 0 uses explicit paths to the apex. Higher levels
start from the residue R_0 = s - Σ_i (-1)^i ψ(s_i), shift its high-color
vertices down onto the next suitable colors, then cone the remainder off a
single vertex u:

    ψ(s) = Σ_j T_j + R^u
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from cones.chains import IntegerChain, _freeze, _thaw, empty_chain, vertex_chain
from complexes.simplicial import canonical
from errors import ChainError, ConeConstructionError, SuitabilityError
from lattice.geometric import LatticeView, Vertex
from lattice.suitability import SuitabilityConstants, is_k_suitable, suitability_constants
from utils.parallel import ordered_results, run_parallel

logger = logging.getLogger(__name__)

Face = Tuple[Vertex, ...]


def face_key(face: Sequence) -> str:
    return json.dumps([_thaw(v) for v in face], separators=(",", ":"))


def _face_from_key(key: str) -> Face:
    return tuple(_freeze(v) for v in json.loads(key))


@dataclass
class Cone:
    """ψ_{-1}..ψ_level on the faces built so far, keyed by sorted face."""
    view: LatticeView
    level: int
    consts: SuitabilityConstants
    apex: Vertex
    psi: Dict[int, Dict[Face, IntegerChain]] = field(default_factory=dict)
    traces: Dict[Face, List[int]] = field(default_factory=dict)

    def __post_init__(self):
        for j in range(-1, self.level + 1):
            self.psi.setdefault(j, {})
        self.psi[-1].setdefault((), vertex_chain(self.apex))

    def value(self, oriented: Sequence) -> IntegerChain:
        """ψ on an oriented face."""
        face, sign = canonical(oriented)
        try:
            chain = self.psi[len(face) - 1][face]
        except KeyError:
            raise ChainError(f"Cone has no value on {face}")
        return chain * sign

    def faces(self, j: int) -> List[Face]:
        return sorted(self.psi.get(j, {}))

    def radius(self) -> int:
        return max(len(chain) for level in self.psi.values() for chain in level.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "colors": list(self.view.colors),
            "lattice": self.view.lattice.to_dict(),
            "apex": _thaw(self.apex),
            "radius": self.radius(),
            "psi": {face_key(s): chain.to_dict()
                    for j in range(0, self.level + 1) for s, chain in sorted(self.psi[j].items())},
        }

    @classmethod
    def from_dict(cls, doc: Dict[str, Any], view: LatticeView) -> "Cone":
        level = int(doc["level"])
        cone = cls(view, level, suitability_constants(level), _freeze(doc["apex"]))
        for key, terms in doc.get("psi", {}).items():
            s = _face_from_key(key)
            cone.psi.setdefault(len(s) - 1, {})[s] = IntegerChain.from_dict(len(s), terms)
        return cone


class ConeBuilder:
    """Computes ψ face by face; lower levels must be filled before higher ones."""

    def __init__(self, cone: Cone):
        self.cone = cone
        self.view = cone.view
        self.colors = cone.view.colors

    def color_at(self, position: int) -> int:
        """i_position, 1-indexed."""
        if position > len(self.colors):
            raise ConeConstructionError(f"Color i_{position} needed but only {len(self.colors)} colors given")
        return self.colors[position - 1]

    def _linking(self, vertices: Iterable[Vertex], color: int, what: str) -> Vertex:
        w = self.view.linking_vertex(vertices, color)
        if w is None:
            raise ConeConstructionError(f"No {what} vertex of color {color} links {sorted(vertices)}")
        return w

    def _append(self, chain: IntegerChain, w: Vertex) -> IntegerChain:
        try:
            return chain.append(w, self.view.has_face)
        except ChainError as e:
            raise ConeConstructionError(f"Appending {w} failed: {e}")

    def path(self, u: Vertex) -> IntegerChain:
        """ψ_0(u): a path of at most three edges from the apex to u."""
        v0 = self.cone.apex
        i1, i2 = self.color_at(1), self.color_at(2)
        if u == v0:
            return IntegerChain.zero(1)
        if self.view.adjacent(v0, u):
            return IntegerChain.face((v0, u))
        if u[0] == i1:
            w = self._linking([v0, u], i2, "path")
            return IntegerChain.face((v0, w)) + IntegerChain.face((w, u))
        w1 = self._linking([u], i1, "path")
        w2 = self._linking([v0, w1], i2, "path")
        return IntegerChain.face((v0, w2)) + IntegerChain.face((w2, w1)) + IntegerChain.face((w1, u))

    def residue(self, s: Face) -> IntegerChain:
        """R_0 = s - Σ_i (-1)^i ψ(s_i)."""
        out = IntegerChain.face(s)
        if len(s) == 1:
            return out - self.cone.psi[-1][()]
        for i in range(len(s)):
            out = out - self.cone.value(s[:i] + s[i + 1:]) * ((-1) ** i)
        return out

    def fill(self, s: Face) -> Tuple[IntegerChain, List[int]]:
        """ψ(s) for a sorted face s of level ≥ 1, with |supp R_j| along the shifting run."""
        level = len(s) - 1
        consts = self.cone.consts
        low_level = level - 1
        threshold = self.color_at(consts.c[low_level])
        R = self.residue(s)
        outside = [v for v in R.vertex_support() if v[0] > threshold and v not in s]
        if outside:
            raise ConeConstructionError(f"High-color vertices {sorted(outside)} of the residue at {s} are not in s")

        sizes = [len(R)]
        shifted = IntegerChain.zero(level + 1)
        high = sorted((v for v in s if v[0] > threshold), key=lambda v: v[0])
        for j, v in enumerate(high):
            target = self.color_at(consts.c[low_level] + j + 1)
            if v[0] == target:
                continue
            part = R.restrict(v)
            if not part:
                continue
            w = self._linking(part.vertex_support(), target, "shifting")
            T = self._append(part, w)
            R = R - T.boundary()
            shifted = shifted + T
            sizes.append(len(R))

        if R:
            u = self._linking(R.vertex_support(), self.color_at(consts.c[level]), "star")
            shifted = shifted + self._append(R, u)
        return shifted, sizes


def _closure(faces: Iterable[Sequence], k: int) -> Dict[int, List[Face]]:
    """Requested faces plus all of their non-empty sub-faces, by level."""
    by_level: Dict[int, set] = {j: set() for j in range(0, k + 1)}
    stack = [tuple(sorted(f)) for f in faces]
    while stack:
        s = stack.pop()
        j = len(s) - 1
        if j < 0 or s in by_level.setdefault(j, set()):
            continue
        by_level[j].add(s)
        stack.extend(s[:i] + s[i + 1:] for i in range(len(s)))
    return {j: sorted(by_level[j]) for j in sorted(by_level)}


def build_cone(view: LatticeView, k: int, consts: Optional[SuitabilityConstants] = None,
               faces: Optional[Iterable[Sequence]] = None, workers: int = 1,
               quiet: bool = True) -> Cone:
    """
    Build ψ_{-1}..ψ_k on `view`.

    Without `faces`, every face of levels 0..k is enumerated (the lattice
    must be small enough to list); otherwise only the given faces and their
    sub-faces are filled. Faces of one level are independent and go through
    the worker pool.

    Raises:
        SuitabilityError: if the view's colors are not k-suitable
        ConeConstructionError: if a shifting or star vertex does not exist
    """
    consts = consts or suitability_constants(k)
    if not is_k_suitable(view.colors, k, consts):
        raise SuitabilityError(f"Colors {list(view.colors)} are not {k}-suitable")
    cone = Cone(view, k, consts, view.first_vertex(view.colors[0]))
    builder = ConeBuilder(cone)
    if faces is None:
        wanted = {j: view.faces(j) for j in range(0, k + 1)}
    else:
        wanted = _closure(faces, k)
        if max(wanted, default=0) > k:
            raise ConeConstructionError(f"Faces above level {k} requested")

    for j in range(0, k + 1):
        todo = [s for s in wanted.get(j, []) if s not in cone.psi[j]]
        if not todo:
            continue
        if j == 0:
            work = lambda s: (builder.path(s[0]), [])
        else:
            work = builder.fill
        results, errors = run_parallel(work, todo, workers=workers, quiet=quiet, desc=f"Cone level {j}")
        if errors:
            first = min(errors)
            raise ConeConstructionError(f"Cone failed at {todo[first]}: {errors[first]}")
        for s, (chain, sizes) in zip(todo, ordered_results(results)):
            cone.psi[j][s] = chain
            if sizes:
                cone.traces[s] = sizes
        logger.debug("Cone level %d: %d faces filled", j, len(todo))
    logger.info("Built %d-cone on %s with radius %d", k, view, cone.radius())
    return cone


@dataclass
class ConeViolation:
    face: Face
    level: int
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return {"face": [_thaw(v) for v in self.face], "level": self.level, "reason": self.reason}


@dataclass
class ConeCheck:
    valid: bool
    radius: int
    violations: List[ConeViolation]
    max_vertex_support: Dict[int, int]
    max_new_color: Dict[int, int]
    radius_limit: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "cone",
            "valid": self.valid,
            "radius": self.radius,
            "violations": [v.to_dict() for v in self.violations],
            "max_vertex_support": {str(j): n for j, n in self.max_vertex_support.items()},
            "max_new_color": {str(j): c for j, c in self.max_new_color.items()},
            "radius_limit": self.radius_limit,
        }


def verify_cone(cone: Cone, support_bounds: bool = True) -> ConeCheck:
    """
    Check the cone identity on every stored face, that each filling lives in
    the view, and (with `support_bounds`) |vs(ψ_j(s))| ≤ n_j, new vertices of
    color at most i_{c_j}, non-increasing residues while shifting and radius at
    most D_k.
    """
    view, consts = cone.view, cone.consts
    violations: List[ConeViolation] = []
    max_support: Dict[int, int] = {}
    max_color: Dict[int, int] = {}

    apex_chain = cone.psi[-1].get(())
    if apex_chain is None or apex_chain.boundary() != empty_chain():
        violations.append(ConeViolation((), -1, "psi(empty) is not a single vertex"))

    for j in range(0, cone.level + 1):
        for s, chain in sorted(cone.psi[j].items()):
            if chain.level != j + 1:
                violations.append(ConeViolation(s, j, f"filling on level {chain.level}"))
                continue
            bad = [t for t in chain.support() if not view.has_face(t)]
            if bad:
                violations.append(ConeViolation(s, j, f"{len(bad)} faces outside the complex"))
            expected = IntegerChain.face(s)
            try:
                if j == 0:
                    expected = expected - apex_chain
                else:
                    for i in range(len(s)):
                        expected = expected - cone.value(s[:i] + s[i + 1:]) * ((-1) ** i)
            except (ChainError, TypeError) as e:
                violations.append(ConeViolation(s, j, f"missing sub-face filling: {e}"))
                continue
            if chain.boundary() != expected:
                violations.append(ConeViolation(s, j, "boundary identity fails"))

            vs = chain.vertex_support()
            new_colors = [v[0] for v in vs if v not in s]
            max_support[j] = max(max_support.get(j, 0), len(vs))
            if new_colors:
                max_color[j] = max(max_color.get(j, 0), max(new_colors))
            if not support_bounds or j > consts.k:
                continue
            if len(vs) > consts.n[j]:
                violations.append(ConeViolation(s, j, f"vertex support {len(vs)} > {consts.n[j]}"))
            limit = view.colors[consts.c[j] - 1] if consts.c[j] <= len(view.colors) else None
            if limit is not None and new_colors and max(new_colors) > limit:
                violations.append(ConeViolation(s, j, f"new vertex color {max(new_colors)} > {limit}"))
            sizes = cone.traces.get(s, [])
            if any(b > a for a, b in zip(sizes, sizes[1:])):
                violations.append(ConeViolation(s, j, f"residue grew while shifting: {sizes}"))

    radius = cone.radius()
    limit = consts.radius if support_bounds else None
    if limit is not None and radius > limit:
        violations.append(ConeViolation((), cone.level, f"radius {radius} > {limit}"))
    if violations:
        logger.warning("Cone check found %d violations", len(violations))
    return ConeCheck(not violations, radius, violations, max_support, max_color, limit)
