"""Asymmetric group-valued cochains and coboundary operators."""

import logging
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Optional, Sequence

import numpy as np

from cochains.groups import FiniteGroup, parse_group
from complexes.simplicial import SimplicialComplex, canonical
from errors import CochainError, GroupError, PreconditionError

logger = logging.getLogger(__name__)


def coboundary_from_facets(group: FiniteGroup, k: int, facets: Sequence[np.ndarray]) -> np.ndarray:
    """
    Coboundary values on canonical (k+1)-faces from the values of their facets.

    `facets[i]` holds f on the facet with vertex i removed (canonical orientation).
    Abelian groups use the alternating sum. Non-abelian groups use
    δγ(v) = γ, δh(vu) = h(v)h(u)^-1 and δh(vuw) = h(vu)h(uw)h(wv).
    Arrays of any shape broadcast elementwise.
    """
    table, inverse = group.table, group.inverse
    if group.is_abelian:
        acc = np.asarray(facets[0])
        for i in range(1, len(facets)):
            term = facets[i] if i % 2 == 0 else inverse[facets[i]]
            acc = table[acc, term]
        return acc
    if k == -1:
        return np.asarray(facets[0])
    if k == 0:
        return table[facets[1], inverse[facets[0]]]
    if k == 1:
        return table[table[facets[2], facets[0]], inverse[facets[1]]]
    raise GroupError(f"Coboundary of level {k} needs an abelian group, got {group.name}")


class Cochain:
    """
    Function on oriented k-faces with f(π(s)) = f(s)^sign(π).

    Values are stored once per canonical (sorted) face, in face-index order.
    Level-2 cochains over a non-abelian group obtained from δ_1 keep their
    source so that every orientation can be evaluated.
    """

    def __init__(self, complex: SimplicialComplex, level: int, group: FiniteGroup,
                 values: Optional[Iterable[int]] = None, source: Optional["Cochain"] = None):
        if not -1 <= level <= complex.dimension:
            raise CochainError(f"Level {level} outside -1..{complex.dimension}")
        n = complex.face_count(level)
        if values is None:
            array = np.zeros(n, dtype=np.int64)
        else:
            array = np.array(values, dtype=np.int64).reshape(-1)
            if array.shape != (n,):
                raise CochainError(f"Expected {n} values for level {level}, got {array.shape[0]}")
            if n and (array.min() < 0 or array.max() >= group.order):
                raise CochainError(f"Values outside the group {group.name}")
        array.setflags(write=False)
        self.complex = complex
        self.level = level
        self.group = group
        self.values = array
        self.source = source

    # -- constructors ---------------------------------------------------------------

    @classmethod
    def zeros(cls, complex: SimplicialComplex, level: int, group: FiniteGroup) -> "Cochain":
        return cls(complex, level, group)

    @classmethod
    def random(cls, complex: SimplicialComplex, level: int, group: FiniteGroup,
               rng: np.random.Generator) -> "Cochain":
        return cls(complex, level, group,
                   rng.integers(0, group.order, size=complex.face_count(level)))

    @classmethod
    def from_function(cls, complex: SimplicialComplex, level: int, group: FiniteGroup,
                      fn: Callable[[tuple], int]) -> "Cochain":
        return cls(complex, level, group, [fn(face) for face in complex.faces(level)])

    def with_values(self, values: Iterable[int]) -> "Cochain":
        return Cochain(self.complex, self.level, self.group, values)

    # -- evaluation -----------------------------------------------------------------

    def __getitem__(self, face: Iterable[int]) -> int:
        return self.value(tuple(face))

    def value(self, oriented: Sequence[int]) -> int:
        """Value on an oriented face."""
        face, sign = canonical(oriented)
        if self.source is not None and len(face) == 3 and tuple(oriented) != face:
            a, b, c = oriented
            src = self.source
            return self.group.product([src.value((a, b)), src.value((b, c)), src.value((c, a))])
        if not self.group.is_abelian and len(face) == 3 and tuple(oriented) != face:
            raise CochainError("Non-abelian level-2 cochain without a source has no rotation rule")
        stored = int(self.values[self.complex.index(face)])
        return stored if sign > 0 else self.group.inv(stored)

    def nonzero_mask(self) -> np.ndarray:
        return self.values != 0

    def weight(self) -> Fraction:
        return _mass_fraction(self.complex, self.level, self.nonzero_mask())

    def distance(self, other: "Cochain") -> Fraction:
        self._check_compatible(other)
        return _mass_fraction(self.complex, self.level, self.values != other.values)

    def coboundary(self) -> "Cochain":
        return coboundary(self)

    def restrict_to_link(self, face: Iterable[int]) -> "Cochain":
        """g_r(p) = g(r∘p) on the link of r, one level per vertex of r lower."""
        r = tuple(sorted(face))
        link = self.complex.link(r)
        level = self.level - len(r)
        values = [self.value(r + p) for p in link.faces(level)]
        return Cochain(link, level, self.group, values)

    # -- arithmetic (abelian) -------------------------------------------------------

    def _check_compatible(self, other: "Cochain"):
        if not isinstance(other, Cochain):
            raise CochainError(f"Expected a Cochain, got {type(other).__name__}")
        if other.level != self.level or other.group != self.group:
            raise CochainError("Cochains differ in level or group")
        if other.complex is not self.complex and other.complex != self.complex:
            raise CochainError("Cochains live on different complexes")

    def _check_abelian(self):
        if not self.group.is_abelian:
            raise GroupError(f"Pointwise arithmetic needs an abelian group, got {self.group.name}")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        self._check_abelian()
        return self.with_values(self.group.table[self.values, other.values])

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        self._check_abelian()
        return self.with_values(self.group.table[self.values, self.group.inverse[other.values]])

    def __neg__(self) -> "Cochain":
        self._check_abelian()
        return self.with_values(self.group.inverse[self.values])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.level == other.level and self.group == other.group
                and (self.complex is other.complex or self.complex == other.complex)
                and np.array_equal(self.values, other.values))

    def __hash__(self) -> int:
        return hash((self.level, self.group.name, self.values.tobytes()))

    def __repr__(self) -> str:
        return (f"<Cochain level={self.level} group={self.group.name} "
                f"support={int(self.nonzero_mask().sum())}/{self.values.shape[0]}>")

    # -- serialization --------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {"level": self.level, "group": self.group.name, "values": self.values.tolist()}

    @classmethod
    def from_dict(cls, doc: Dict[str, Any], complex: SimplicialComplex) -> "Cochain":
        try:
            return cls(complex, int(doc["level"]), parse_group(doc["group"]), doc["values"])
        except KeyError as e:
            raise CochainError(f"Malformed cochain document: missing {e}")


def _mass_fraction(X: SimplicialComplex, level: int, mask: np.ndarray) -> Fraction:
    masses = X.mass(level)
    total = int(masses[mask].sum()) if mask.any() else 0
    return Fraction(total, X.mass_denominator(level))


def coboundary(f: Cochain) -> Cochain:
    """δ_k f as a (k+1)-cochain."""
    k = f.level
    X = f.complex
    if k + 1 > X.dimension:
        raise PreconditionError(f"Coboundary of level {k} needs dimension at least {k + 1}")
    if not f.group.is_abelian and k >= 2:
        raise GroupError(f"Coboundary of level {k} needs an abelian group, got {f.group.name}")
    down = X.down_incidence(k + 1)
    facets = [f.values[down[:, i]] for i in range(k + 2)]
    values = coboundary_from_facets(f.group, k, facets)
    source = f if (not f.group.is_abelian and k == 1) else None
    return Cochain(X, k + 1, f.group, values, source=source)


def weight(f: Cochain) -> Fraction:
    """wt(f) = Pr_k[f(t) != e]."""
    return f.weight()


def distance(f: Cochain, g: Cochain) -> Fraction:
    """dist(f, g) = Pr_k[f(t) != g(t)]."""
    return f.distance(g)
