"""
Color sets for which cone construction succeeds.

The constants c_i (colors consumed up to level i), n_i (vertex support of a
level-i filling) and D_i (radius of the level-i cone) follow

    c_0 = 2, c_i = c_{i-1} + i + 2
    n_0 = 4, n_i = 2(i+2) - (i+1)^2 + (i+1) n_{i-1}
    D_0 = 3, D_i = (i+2)(i+1)(D_{i-1} + 1)

Color lists are 1-indexed in the formulas below: i_1 < i_2 < ...
"""

import logging
from dataclasses import dataclass
from math import ceil
from typing import List, Optional, Sequence

import numpy as np

from errors import SuitabilityError

logger = logging.getLogger(__name__)

TRIPLE_THRESHOLD = 18


@dataclass(frozen=True)
class SuitabilityConstants:
    k: int
    c: List[int]
    n: List[int]
    D: List[int]

    @property
    def colors_needed(self) -> int:
        return self.c[self.k]

    @property
    def radius(self) -> int:
        return self.D[self.k]


def suitability_constants(k: int) -> SuitabilityConstants:
    if k < 0:
        raise SuitabilityError(f"Level must be non-negative, got {k}")
    c, n, D = [2], [4], [3]
    for i in range(1, k + 1):
        c.append(c[-1] + i + 2)
        n.append(2 * (i + 2) - (i + 1) ** 2 + (i + 1) * n[-1])
        D.append((i + 2) * (i + 1) * (D[-1] + 1))
    return SuitabilityConstants(k, c, n, D)


def _lower_bound(F: Sequence[int], position: int, consts: SuitabilityConstants) -> int:
    """Smallest admissible value of i_position given i_1..i_{position-1}."""
    i = lambda m: F[m - 1]
    bound = i(position - 1) + 1 if position > 1 else 1
    if position == 2:
        bound = max(bound, 2 * i(1))
    for j in range(consts.k):
        m = position - consts.c[j]
        if 1 <= m <= j + 2:
            required = consts.n[j] * i(consts.c[j]) + sum(i(consts.c[j] + mm) for mm in range(1, m))
            bound = max(bound, required)
    return bound


def is_k_suitable(F: Sequence[int], k: int, consts: Optional[SuitabilityConstants] = None) -> bool:
    """
    i_2 ≥ 2 i_1 and i_{c_j+m} ≥ n_j i_{c_j} + Σ_{m'<m} i_{c_j+m'} for j < k, 1 ≤ m ≤ j+2.

    Raises:
        SuitabilityError: if F has fewer than c_k colors
    """
    consts = consts or suitability_constants(k)
    colors = [int(x) for x in F]
    if len(colors) < consts.c[k]:
        raise SuitabilityError(f"{k}-suitability needs {consts.c[k]} colors, got {len(colors)}")
    if colors[0] < 1 or any(b <= a for a, b in zip(colors, colors[1:])):
        return False
    return all(colors[p - 1] >= _lower_bound(colors, p, consts) for p in range(2, consts.c[k] + 1))


def minimal_suitable_colors(d: int, k: int) -> Optional[List[int]]:
    """Greedy smallest k-suitable colors inside 1..d, or None when they do not fit."""
    consts = suitability_constants(k)
    F = [1]
    for p in range(2, consts.c[k] + 1):
        F.append(_lower_bound(F, p, consts))
    return F if F[-1] <= d else None


def sample_suitable_colors(d: int, k: int, seed: int = 0, fallback: bool = False) -> Optional[List[int]]:
    """
    Draw i_j uniformly from [d/(2B)^{c_k+1-j}, 2d/(2B)^{c_k+1-j}) with B = (k+3) n_k.

    Returns None when a strip holds no positive integer, unless `fallback`
    asks for the greedy minimal colors instead.
    """
    consts = suitability_constants(k)
    if d < consts.c[k]:
        raise SuitabilityError(f"Need at least {consts.c[k]} colors, got d={d}")
    B = (k + 3) * consts.n[k]
    rng = np.random.default_rng(seed)
    F: List[int] = []
    for j in range(1, consts.c[k] + 1):
        scale = (2 * B) ** (consts.c[k] + 1 - j)
        low = max(1, ceil(d / scale))
        high = min(d, ceil(2 * d / scale) - 1)
        if low > high:
            logger.debug("Strip %d empty for d=%d, k=%d", j, d, k)
            return minimal_suitable_colors(d, k) if fallback else None
        F.append(int(rng.integers(low, high + 1)))
    if not is_k_suitable(F, k, consts):
        logger.warning("Sampled colors %s are not %d-suitable", F, k)
        return minimal_suitable_colors(d, k) if fallback else None
    return F


def triple_colors(d: int, seed: int = 0) -> List[int]:
    """
    Colors i_0 < i_1 < i_2 with 2 i_0 ≤ i_1 and 3 i_1 ≤ i_2 for non-abelian cones.

    Below d = 18 the strips are empty and (1, 2, 3) is used.
    """
    if d < 3:
        raise SuitabilityError(f"Three colors needed, got d={d}")
    if d < TRIPLE_THRESHOLD:
        return [1, 2, 3]
    rng = np.random.default_rng(seed)
    i0 = int(rng.integers(1, d // 18 + 1))
    i1 = int(rng.integers(max(2 * i0, ceil(d / 9)), 2 * d // 9 + 1))
    i2 = int(rng.integers(max(3 * i1, ceil(2 * d / 3)), d + 1))
    return [i0, i1, i2]
