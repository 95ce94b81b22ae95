"""Greedy bases, the maximum greedy base size, and exact minimum base size."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .group import Group, point_stabilizer, pointwise_stabilizer
from .orbits import orbits


class BudgetExceeded(RuntimeError):
    """A search hit its node budget before finishing; no value was computed."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: node budget {budget} exceeded")
        self.budget = budget


class StabilizerTree:
    """Memoised pointwise stabilisers keyed by point set.

    The stabiliser of a sequence only depends on its set of points, so every
    search here shares one cache per group.
    """

    def __init__(self, g: Group):
        self.group = g
        self._stab: dict[frozenset, Group] = {frozenset(): g}
        self._orbits: dict[frozenset, list[tuple[int, ...]]] = {}

    def stabilizer(self, points: Sequence[int]) -> Group:
        key = frozenset(points)
        k = self._stab.get(key)
        if k is None:
            parent = self.stabilizer(points[:-1])
            k = parent if points[-1] in key - {points[-1]} else point_stabilizer(parent, points[-1])
            self._stab[key] = k
        return k

    def orbits(self, points: Sequence[int]) -> list[tuple[int, ...]]:
        key = frozenset(points)
        parts = self._orbits.get(key)
        if parts is None:
            parts = orbits(self.stabilizer(points))
            self._orbits[key] = parts
        return parts


def is_base(g: Group, points: Sequence[int]) -> bool:
    return pointwise_stabilizer(g, list(points)).order == 1


@dataclass
class GreedyTrace:
    base: list[int]
    orbit_sizes: list[int]
    choices: list[int]

    def __len__(self) -> int:
        return len(self.base)

    def to_json(self) -> dict:
        return {"base": self.base, "orbit_sizes": self.orbit_sizes, "choices": self.choices}


def _largest(parts: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    m = len(parts[0])
    return [o for o in parts if len(o) == m]


def greedy_base(
    g: Group, policy: str = "deterministic", rng: random.Random | None = None
) -> GreedyTrace:
    """Run the greedy algorithm once.

    ``deterministic`` takes the least point of the canonical largest orbit;
    ``random`` picks uniformly among all points lying in some largest orbit.
    """
    if policy not in ("deterministic", "random"):
        raise ValueError(f"unknown policy {policy!r}")
    if policy == "random" and rng is None:
        raise ValueError("random policy needs an rng")
    k = g
    trace = GreedyTrace([], [], [])
    while k.order > 1:
        largest = _largest(orbits(k))
        if policy == "deterministic":
            beta = largest[0][0]
        else:
            beta = rng.choice([a for o in largest for a in o])
        trace.base.append(beta)
        trace.orbit_sizes.append(len(largest[0]))
        trace.choices.append(len(largest))
        k = point_stabilizer(k, beta)
    return trace


@dataclass
class GreedyMax:
    value: int
    nodes: int
    witness: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"greedy_max": self.value, "nodes": self.nodes, "witness": self.witness}


def greedy_max_search(g: Group, budget: int = 10**6) -> GreedyMax:
    """Exact maximum greedy base length by backtracking.

    At each node one point per distinct largest orbit is tried: two points
    in the same orbit of the current stabiliser K differ by an element of K,
    which carries every greedy continuation of one onto one of the other.
    """
    tree = StabilizerTree(g)
    nodes = 0
    best: list[int] = []
    best_len = -1

    def rec(prefix: list[int]) -> None:
        nonlocal nodes, best, best_len
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("greedy_size_max", budget)
        k = tree.stabilizer(prefix)
        if k.order == 1:
            if len(prefix) > best_len:
                best, best_len = list(prefix), len(prefix)
            return
        # every further step at least halves |K|
        if len(prefix) + k.order.bit_length() - 1 <= best_len:
            return
        for o in _largest(tree.orbits(prefix)):
            prefix.append(o[0])
            rec(prefix)
            prefix.pop()

    rec([])
    return GreedyMax(best_len, nodes, best)


def greedy_size_max(g: Group, budget: int = 10**6) -> int:
    return greedy_max_search(g, budget).value


def greedy_size_max_naive(g: Group, budget: int = 10**6) -> int:
    """Maximum greedy base length over every point of every largest orbit (test oracle)."""
    tree = StabilizerTree(g)
    nodes = 0

    def rec(prefix: list[int]) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("greedy_size_max_naive", budget)
        if tree.stabilizer(prefix).order == 1:
            return len(prefix)
        best = 0
        for o in _largest(tree.orbits(prefix)):
            for a in o:
                prefix.append(a)
                best = max(best, rec(prefix))
                prefix.pop()
        return best

    return rec([])


def base_size_exact(g: Group, budget: int = 10**6, reduce_orbits: bool = True) -> int:
    """Minimum base length by iterative deepening.

    Only points moved by the current stabiliser K are tried (one per K-orbit
    when ``reduce_orbits``), and a branch is cut when ``m ** depth < |K|``
    with m the largest K-orbit: no remaining point can shrink K faster.
    """
    tree = StabilizerTree(g)
    nodes = 0

    def search(prefix: list[int], depth: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("base_size_exact", budget)
        k = tree.stabilizer(prefix)
        if k.order == 1:
            return True
        if depth == 0:
            return False
        parts = tree.orbits(prefix)
        if len(parts[0]) ** depth < k.order:
            return False
        for o in parts:
            if len(o) == 1:
                break
            for a in o[:1] if reduce_orbits else o:
                prefix.append(a)
                found = search(prefix, depth - 1)
                prefix.pop()
                if found:
                    return True
        return False

    depth = 0
    while not search([], depth):
        depth += 1
    return depth
