"""
Integer chains on oriented faces.

A chain is stored on sorted faces; an oriented face t enters with the sign
of the permutation sorting it, so f_{π(t)} = sign(π) f_t. Vertices may be any
sortable hashable values (ints of a SimplicialComplex, (rank, element) pairs
of a lattice view).
"""

from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from complexes.simplicial import canonical
from errors import ChainError, ComplexError

Face = Tuple[Any, ...]

COEFFICIENT_LIMIT = 2 ** 62


def _freeze(value):
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def _thaw(value):
    if isinstance(value, tuple):
        return [_thaw(v) for v in value]
    return value


class IntegerChain:
    """Finite Z-combination of oriented k-faces; level -1 holds the empty face."""

    __slots__ = ("level", "_terms")

    def __init__(self, level: int, terms: Optional[Mapping[Sequence, int]] = None):
        if level < -1:
            raise ChainError(f"Chain level must be at least -1, got {level}")
        self.level = level
        self._terms: Dict[Face, int] = {}
        for face, coeff in (terms or {}).items():
            self._add(face, int(coeff))

    def _add(self, oriented: Sequence, coeff: int):
        if len(oriented) != self.level + 1:
            raise ChainError(f"Face {tuple(oriented)} does not lie on level {self.level}")
        try:
            face, sign = canonical(oriented)
        except ComplexError as e:
            raise ChainError(str(e))
        value = self._terms.get(face, 0) + sign * coeff
        if abs(value) >= COEFFICIENT_LIMIT:
            raise ChainError(f"Coefficient overflow on {face}")
        if value:
            self._terms[face] = value
        else:
            self._terms.pop(face, None)

    @classmethod
    def face(cls, oriented: Sequence, coeff: int = 1) -> "IntegerChain":
        return cls(len(oriented) - 1, {tuple(oriented): coeff})

    @classmethod
    def zero(cls, level: int) -> "IntegerChain":
        return cls(level)

    def copy(self) -> "IntegerChain":
        out = IntegerChain(self.level)
        out._terms = dict(self._terms)
        return out

    # -- arithmetic ---------------------------------------------------------------------

    def _check(self, other: "IntegerChain"):
        if not isinstance(other, IntegerChain):
            raise ChainError(f"Cannot combine a chain with {type(other).__name__}")
        if other.level != self.level:
            raise ChainError(f"Level mismatch: {self.level} and {other.level}")

    def __add__(self, other: "IntegerChain") -> "IntegerChain":
        self._check(other)
        out = self.copy()
        for face, coeff in other._terms.items():
            out._add(face, coeff)
        return out

    def __sub__(self, other: "IntegerChain") -> "IntegerChain":
        return self + (-other)

    def __neg__(self) -> "IntegerChain":
        out = IntegerChain(self.level)
        out._terms = {face: -c for face, c in self._terms.items()}
        return out

    def __mul__(self, scalar: int) -> "IntegerChain":
        out = IntegerChain(self.level)
        for face, coeff in self._terms.items():
            out._add(face, coeff * int(scalar))
        return out

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerChain):
            return NotImplemented
        return self.level == other.level and self._terms == other._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Face, int]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, oriented: Sequence) -> int:
        face, sign = canonical(oriented)
        return sign * self._terms.get(face, 0)

    # -- supports -----------------------------------------------------------------------

    def support(self) -> List[Face]:
        return sorted(self._terms)

    def vertex_support(self) -> set:
        return {v for face in self._terms for v in face}

    # -- boundary calculus --------------------------------------------------------------

    def boundary(self) -> "IntegerChain":
        """∂t = Σ_i (-1)^i t_i, with t_i the face t minus its i-th vertex."""
        if self.level < 0:
            raise ChainError("The empty face has no boundary")
        out = IntegerChain(self.level - 1)
        for face, coeff in self._terms.items():
            for i in range(len(face)):
                out._add(face[:i] + face[i + 1:], (-1) ** i * coeff)
        return out

    def restrict(self, w) -> "IntegerChain":
        """f_w: the terms whose face contains w."""
        out = IntegerChain(self.level)
        out._terms = {face: c for face, c in self._terms.items() if w in face}
        return out

    def append(self, w, has_face: Optional[Callable[[Iterable], bool]] = None) -> "IntegerChain":
        """
        f^w = Σ α_t (w∘t), so ∂(f^w) = f - (∂f)^w.

        Raises:
            ChainError: if w is already in the support, or when `has_face`
                rejects some w∘t
        """
        out = IntegerChain(self.level + 1)
        for face, coeff in self._terms.items():
            if w in face:
                raise ChainError(f"Cannot append {w!r} to a face containing it")
            if has_face is not None and not has_face((w,) + face):
                raise ChainError(f"{face} is not in the link of {w!r}")
            out._add((w,) + face, coeff)
        return out

    # -- serialization ------------------------------------------------------------------

    def to_dict(self) -> List[Dict[str, Any]]:
        return [{"face": [_thaw(v) for v in face], "coeff": c} for face, c in self]

    @classmethod
    def from_dict(cls, level: int, terms: List[Dict[str, Any]]) -> "IntegerChain":
        out = cls(level)
        try:
            for term in terms:
                out._add(tuple(_freeze(v) for v in term["face"]), int(term["coeff"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ChainError(f"Malformed chain document: {e}")
        return out

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{face}" for face, c in self) or "0"
        return f"IntegerChain[{self.level}]({body})"


def chain_from_walk(walk: Sequence) -> IntegerChain:
    """The 1-chain Σ (w_i, w_{i+1}) of a vertex walk."""
    out = IntegerChain(1)
    for a, b in zip(walk, walk[1:]):
        out._add((a, b), 1)
    return out


def vertex_chain(v) -> IntegerChain:
    return IntegerChain.face((v,))


def empty_chain() -> IntegerChain:
    """The level -1 chain ∅ with coefficient 1."""
    return IntegerChain.face(())
