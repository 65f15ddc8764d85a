"""Exact maximum independent sets by branch and bound over bitsets.

Vertex sets are Python ints. Each node applies degree-0/1 and domination
reductions, bounds with a greedy cover by odd cycles (``floor(len/2)`` each),
edges and singletons, then branches on a maximum-degree vertex ``v``: take
``v``, or drop ``v`` together with its mirrors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .planar_map import CombinatorialMap

DEFAULT_BUDGET = 10_000_000
MAX_EXACT_N = 120


class BudgetExceeded(RuntimeError):
    """Branch and bound would need more nodes than allowed."""


def node_budget() -> int:
    raw = os.environ.get("ODDPLANAR_BB_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"ODDPLANAR_BB_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("ODDPLANAR_BB_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class MISResult:
    size: int
    vertices: frozenset[int]
    nodes: int


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Solver:
    def __init__(self, nbr: Sequence[int], cycles: Sequence[int], budget: int):
        self.nbr = nbr
        self.cycles = cycles
        self.budget = budget
        self.nodes = 0
        self.best = 0
        self.best_set = 0

    def bound(self, alive: int) -> int:
        left = alive
        ub = 0
        for c in self.cycles:
            if c & left == c:
                ub += c.bit_count() // 2
                left &= ~c
        while left:
            v = (left & -left).bit_length() - 1
            left &= ~(1 << v)
            ub += 1
            pair = self.nbr[v] & left
            if pair:
                left &= ~(pair & -pair)
        return ub

    def reduce(self, alive: int, chosen: int) -> tuple[int, int]:
        nbr = self.nbr
        changed = True
        while changed:
            changed = False
            for v in _bits(alive):
                if not alive >> v & 1:
                    continue
                nv = nbr[v] & alive
                if nv.bit_count() <= 1:
                    chosen |= 1 << v
                    alive &= ~(nv | 1 << v)
                    changed = True
                    continue
                closed_v = nv | 1 << v
                for u in _bits(nv):
                    # N[v] inside N[u]: some maximum set avoids u
                    if closed_v & ~(nbr[u] | 1 << u) & alive == 0:
                        alive &= ~(1 << u)
                        changed = True
                        break
        return alive, chosen

    def mirrors(self, v: int, alive: int) -> int:
        nv = self.nbr[v] & alive
        second = 0
        for u in _bits(nv):
            second |= self.nbr[u]
        second &= alive & ~nv & ~(1 << v)
        out = 0
        for u in _bits(second):
            rest = nv & ~self.nbr[u]
            # rest must be a clique
            if all(rest & ~(self.nbr[a] | 1 << a) == 0 for a in _bits(rest)):
                out |= 1 << u
        return out

    def search(self, alive: int, chosen: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"branch and bound exceeded {self.budget} nodes")
        alive, chosen = self.reduce(alive, chosen)
        size = chosen.bit_count()
        if not alive:
            if size > self.best:
                self.best, self.best_set = size, chosen
            return
        if size + self.bound(alive) <= self.best:
            return
        v = max(_bits(alive), key=lambda x: ((self.nbr[x] & alive).bit_count(), -x))
        self.search(alive & ~(self.nbr[v] | 1 << v), chosen | 1 << v)
        self.search(alive & ~(self.mirrors(v, alive) | 1 << v), chosen)


def maximum_independent_set(
    adjacency: Sequence[Iterable[int]],
    odd_cycles: Iterable[Iterable[int]] = (),
    budget: int | None = None,
    initial: Iterable[int] | None = None,
) -> MISResult:
    """Exact maximum independent set of the graph ``adjacency``.

    ``odd_cycles`` (any family of odd cycles, typically the odd faces)
    sharpen the bound. ``initial`` is an optional known independent set used
    as the incumbent.
    """
    n = len(adjacency)
    nbr = [0] * n
    for v, ns in enumerate(adjacency):
        for u in ns:
            nbr[v] |= 1 << u
    cycles = sorted({sum(1 << v for v in c) for c in odd_cycles}, key=lambda c: (c.bit_count(), c))
    solver = _Solver(nbr, [c for c in cycles if c.bit_count() % 2], node_budget() if budget is None else budget)
    if initial is not None:
        init = frozenset(initial)
        if any(nbr[v] >> u & 1 for v in init for u in init):
            raise ValueError("initial set is not independent")
        solver.best = len(init)
        solver.best_set = sum(1 << v for v in init)
    solver.search((1 << n) - 1, 0)
    return MISResult(solver.best, frozenset(_bits(solver.best_set)), solver.nodes)


def map_independence_number(m: CombinatorialMap, budget: int | None = None,
                            initial: Iterable[int] | None = None) -> MISResult:
    if m.n > MAX_EXACT_N:
        raise BudgetExceeded(f"exact independence number limited to n <= {MAX_EXACT_N}, got n = {m.n}")
    odd = [f for f in m.faces if len(f) % 2]
    return maximum_independent_set(m.rotations, odd, budget, initial)


def brute_force_independence(adjacency: Sequence[Iterable[int]]) -> int:
    """Reference value by plain recursion; only for small graphs."""
    n = len(adjacency)
    nbr = [sum(1 << u for u in ns) for ns in adjacency]

    def go(alive: int) -> int:
        if not alive:
            return 0
        v = (alive & -alive).bit_length() - 1
        return max(go(alive & ~(1 << v)), 1 + go(alive & ~(nbr[v] | 1 << v)))

    return go((1 << n) - 1)
