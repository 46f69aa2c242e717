"""Vertex walks and the backtracking (BT) and triangle (TR) rewrites on them."""

from typing import Callable, Iterable, Optional, Sequence, Tuple

from errors import LoopError

Walk = Tuple


def check_walk(walk: Sequence, has_face: Optional[Callable[[Iterable], bool]] = None) -> Walk:
    """A walk must be non-empty, never stall, and (with `has_face`) follow edges."""
    walk = tuple(walk)
    if not walk:
        raise LoopError("Empty walk")
    for a, b in zip(walk, walk[1:]):
        if a == b:
            raise LoopError(f"Walk stalls at {a!r}")
        if has_face is not None and not has_face((a, b)):
            raise LoopError(f"{a!r}, {b!r} are not adjacent")
    return walk


def bt_reduce(walk: Sequence) -> Walk:
    """Free reduction: erase every back-and-forth (u, v, u) → (u) until none is left."""
    stack = []
    for v in walk:
        if len(stack) >= 2 and stack[-2] == v:
            stack.pop()
        else:
            stack.append(v)
    return tuple(stack)


def is_bt_trivial(loop: Sequence) -> bool:
    return len(bt_reduce(loop)) == 1


def bt_equivalent(a: Sequence, b: Sequence) -> bool:
    return bt_reduce(a) == bt_reduce(b)


def inverse(walk: Sequence) -> Walk:
    return tuple(reversed(walk))


def compose(*walks: Sequence) -> Walk:
    """Concatenate walks that meet end to start."""
    out = list(walks[0])
    for walk in walks[1:]:
        if not walk:
            continue
        if out and out[-1] != walk[0]:
            raise LoopError(f"Cannot compose walks ending at {out[-1]!r} and starting at {walk[0]!r}")
        out.extend(walk[1:])
    return tuple(out)


def tr_step(walk: Sequence, position: int, triangle: Sequence, remove: bool = False,
            has_face: Optional[Callable[[Iterable], bool]] = None) -> Walk:
    """
    One triangle rewrite at `position`.

    Insert turns (u, v) at walk[position:position+2] into (u, w, v); remove
    turns (u, w, v) at walk[position:position+3] into (u, v). In both cases
    {u, v, w} must be `triangle`.

    Raises:
        LoopError: if the triangle is not a face or the sub-walk does not match
    """
    walk = tuple(walk)
    corners = set(triangle)
    if len(corners) != 3 or len(triangle) != 3:
        raise LoopError(f"{tuple(triangle)} is not a triangle")
    if has_face is not None and not has_face(tuple(triangle)):
        raise LoopError(f"Triangle {tuple(triangle)} is not in the complex")
    width = 3 if remove else 2
    if position < 0 or position + width > len(walk):
        raise LoopError(f"Position {position} outside a walk of length {len(walk)}")
    part = walk[position:position + width]
    if remove:
        if set(part) != corners:
            raise LoopError(f"Sub-walk {part} does not run around {tuple(triangle)}")
        return walk[:position + 1] + walk[position + 2:]
    u, v = part
    if u == v or not {u, v} <= corners:
        raise LoopError(f"Edge {part} is not a side of {tuple(triangle)}")
    (w,) = corners - {u, v}
    return walk[:position + 1] + (w,) + walk[position + 1:]
