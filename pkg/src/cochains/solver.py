"""
Exact weighted solver for systems of group-word equations.

Every constraint is a word in the unknowns and constants that should evaluate
to the identity; a violated constraint costs its integer weight. Nearest
coboundaries, local fixes and local-minimality checks all reduce to
minimizing the total violated weight of such a system.
"""

import logging
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from cochains.groups import FiniteGroup
from errors import CochainError

logger = logging.getLogger(__name__)

# (variable index or -1 for a constant, constant element, inverted)
Term = Tuple[int, int, bool]

DEFAULT_NODE_BUDGET = 2 ** 18
MAX_SEARCH_DEPTH = 900


def var(index: int, inverted: bool = False) -> Term:
    return (index, 0, inverted)


def const(element: int, inverted: bool = False) -> Term:
    return (-1, element, inverted)


@dataclass
class SolveResult:
    cost: int
    assignment: Tuple[int, ...]
    exact: bool
    nodes: int


class GroupCSP:
    """Minimize the weight of violated word constraints over a finite group."""

    def __init__(self, group: FiniteGroup, n_vars: int,
                 constraints: Sequence[Sequence[Term]], weights: Sequence[int],
                 fixed: Optional[Mapping[int, int]] = None):
        if len(constraints) != len(weights):
            raise CochainError("Each constraint needs exactly one weight")
        self.group = group
        self.n_vars = n_vars
        self.constraints = [tuple(c) for c in constraints]
        self.weights = [int(w) for w in weights]
        self.fixed = dict(fixed or {})
        self._mul = group.table.tolist()
        self._inv = group.inverse.tolist()
        self._touching: List[List[int]] = [[] for _ in range(n_vars)]
        for c, terms in enumerate(self.constraints):
            for v in sorted({t[0] for t in terms if t[0] >= 0}):
                if v >= n_vars:
                    raise CochainError(f"Constraint {c} uses unknown variable {v}")
                self._touching[v].append(c)

    # -- evaluation -------------------------------------------------------------------

    def evaluate(self, c: int, assignment: Sequence[int]) -> int:
        mul, inv = self._mul, self._inv
        acc = 0
        for v, element, inverted in self.constraints[c]:
            x = assignment[v] if v >= 0 else element
            if inverted:
                x = inv[x]
            acc = mul[acc][x]
        return acc

    def cost(self, assignment: Sequence[int]) -> int:
        return sum(w for c, w in enumerate(self.weights) if self.evaluate(c, assignment) != 0)

    def _local_cost(self, v: int, assignment: Sequence[int]) -> int:
        return sum(self.weights[c] for c in self._touching[v] if self.evaluate(c, assignment) != 0)

    def _start(self, initial: Optional[Sequence[int]]) -> List[int]:
        assignment = list(initial) if initial is not None else [0] * self.n_vars
        if len(assignment) != self.n_vars:
            raise CochainError(f"Initial assignment has {len(assignment)} entries, expected {self.n_vars}")
        for v, value in self.fixed.items():
            assignment[v] = value
        return assignment

    # -- search -----------------------------------------------------------------------

    def local_search(self, initial: Optional[Sequence[int]] = None, max_rounds: int = 50) -> List[int]:
        """Coordinate descent: change one variable at a time while the cost drops."""
        assignment = self._start(initial)
        free = [v for v in range(self.n_vars) if v not in self.fixed]
        for _ in range(max_rounds):
            improved = False
            for v in free:
                current = assignment[v]
                best_value, best_cost = current, self._local_cost(v, assignment)
                for value in range(self.group.order):
                    if value == current:
                        continue
                    assignment[v] = value
                    c = self._local_cost(v, assignment)
                    if c < best_cost:
                        best_value, best_cost = value, c
                assignment[v] = best_value
                improved = improved or best_value != current
            if not improved:
                break
        return assignment

    def _variable_order(self, free: List[int]) -> List[int]:
        """Greedy order that completes as many constraints as early as possible."""
        placed = set(self.fixed)
        remaining = set(free)
        order = []
        while remaining:
            def score(v):
                completed = 0
                for c in self._touching[v]:
                    if all(t[0] < 0 or t[0] == v or t[0] in placed for t in self.constraints[c]):
                        completed += 1
                return (completed, len(self._touching[v]), -v)
            v = max(remaining, key=score)
            order.append(v)
            placed.add(v)
            remaining.discard(v)
        return order

    def solve(self, node_budget: int = DEFAULT_NODE_BUDGET,
              initial: Optional[Sequence[int]] = None,
              tie_key: Optional[Callable[[Sequence[int]], tuple]] = None) -> SolveResult:
        """
        Branch and bound from a local-search incumbent.

        The result is exact when the search finishes inside the node budget;
        otherwise the best assignment found so far is returned with exact=False.
        With `tie_key`, equal-cost assignments are also searched and the one
        with the smallest key wins.
        """
        incumbent = self.local_search(initial)
        best_cost = self.cost(incumbent)
        best = list(incumbent)
        best_key = tie_key(best) if tie_key is not None else None

        free = [v for v in range(self.n_vars) if v not in self.fixed]
        order = self._variable_order(free)
        depth_of = {v: i for i, v in enumerate(order)}

        # constraints are charged at the depth of their last free variable
        complete_at: List[List[int]] = [[] for _ in order]
        base_cost = 0
        assignment = self._start(None)
        for c, terms in enumerate(self.constraints):
            depths = [depth_of[t[0]] for t in terms if t[0] >= 0 and t[0] in depth_of]
            if depths:
                complete_at[max(depths)].append(c)
            elif self.evaluate(c, assignment) != 0:
                base_cost += self.weights[c]

        if tie_key is None and best_cost == base_cost:
            return SolveResult(best_cost, tuple(best), True, 0)
        if len(order) > MAX_SEARCH_DEPTH:
            logger.debug("Search depth %d too large, keeping local search result", len(order))
            return SolveResult(best_cost, tuple(best), False, 0)

        nodes = 0
        exhausted = False
        values_for: Dict[int, List[int]] = {
            v: [incumbent[v]] + [x for x in range(self.group.order) if x != incumbent[v]]
            for v in order}
        weights = self.weights

        def dfs(depth: int, cost_so_far: int):
            nonlocal nodes, best_cost, best, best_key, exhausted
            if depth == len(order):
                if cost_so_far < best_cost:
                    best_cost = cost_so_far
                    best = list(assignment)
                    best_key = tie_key(best) if tie_key is not None else None
                elif tie_key is not None and cost_so_far == best_cost:
                    key = tie_key(assignment)
                    if key < best_key:
                        best, best_key = list(assignment), key
                return
            v = order[depth]
            for value in values_for[v]:
                nodes += 1
                if nodes > node_budget:
                    exhausted = True
                    return
                assignment[v] = value
                c = cost_so_far
                for ci in complete_at[depth]:
                    if self.evaluate(ci, assignment) != 0:
                        c += weights[ci]
                if c < best_cost or (tie_key is not None and c == best_cost):
                    dfs(depth + 1, c)
                if exhausted or (tie_key is None and best_cost == base_cost):
                    return

        limit = sys.getrecursionlimit()
        if limit < len(order) + 100:
            sys.setrecursionlimit(len(order) + 100)
        try:
            dfs(0, base_cost)
        finally:
            sys.setrecursionlimit(limit)

        exact = not exhausted
        logger.debug("Group solver: cost=%d nodes=%d exact=%s", best_cost, nodes, exact)
        return SolveResult(best_cost, tuple(best), exact, nodes)
