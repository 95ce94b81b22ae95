"""Permutation group handles: order, membership, stabilisers, random elements."""

from __future__ import annotations

import random
import threading
from typing import Iterable, Iterator, Sequence

from .chain import Images, StabilizerChain, _inv, _mul, rebase, schreier_sims
from .perm import Permutation

# Fixed seed for internal base changes: chains are exact regardless of the
# random stream, but a fixed stream keeps strong generators reproducible.
_REBASE_SEED = 0x5EED
_REBASE_CACHE = 64


class Group:
    """A permutation group given by generators, with a lazily built chain.

    The chain is built at most once (guarded by a lock); afterwards the
    handle is read-only and may be shared between threads.
    """

    def __init__(
        self,
        generators: Iterable[Permutation],
        degree: int | None = None,
        label: str | None = None,
        chain: StabilizerChain | None = None,
    ):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise ValueError("degree is required for a group with no generators")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators = generators
        self.label = label
        self._chain = chain
        self._lock = threading.Lock()
        self._replacers: dict[int, tuple] = {}
        self._rebased: dict[tuple, StabilizerChain] = {}

    def __repr__(self) -> str:
        name = self.label or "Group"
        return f"<{name} degree={self.degree} gens={len(self.generators)}>"

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = schreier_sims(
                        (g.images for g in self.generators), self.degree
                    )
        return self._chain

    @property
    def order(self) -> int:
        return self.chain.order

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def __contains__(self, p: Permutation) -> bool:
        return self.chain.contains(p)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def elements(self) -> Iterator[Permutation]:
        for images in self.chain.iter_images():
            yield Permutation(images, check=False)

    def rebased(self, base_prefix: Sequence[int]) -> StabilizerChain:
        """A chain for this group whose base starts with ``base_prefix``."""
        chain = self.chain
        prefix = list(base_prefix)
        if chain.base[: len(prefix)] == prefix:
            return chain
        key = tuple(prefix)
        cached = self._rebased.get(key)
        if cached is None:
            rng = random.Random(_REBASE_SEED)
            cached = rebase(
                chain.order,
                self.degree,
                prefix,
                lambda: chain.random_images(rng),
                seeds=[g.images for g in self.generators],
            )
            if len(self._rebased) >= _REBASE_CACHE:
                self._rebased.pop(next(iter(self._rebased)))
            self._rebased[key] = cached
        return cached


def _check_point(g: Group, a: int) -> None:
    if not 0 <= a < g.degree:
        raise ValueError(f"point {a} out of range for degree {g.degree}")


def build_chain(g: Group) -> StabilizerChain:
    return g.chain


def group_order(g: Group) -> int:
    return g.chain.order


def contains(g: Group, p: Permutation) -> bool:
    return g.chain.contains(p)


def pointwise_stabilizer(g: Group, points: Sequence[int]) -> Group:
    """The subgroup fixing every point of ``points``; ``()`` gives ``g`` itself."""
    for a in points:
        _check_point(g, a)
    if not points:
        return g
    chain = g.rebased(points)
    sub = chain.substabilizer(len(points))
    label = f"{g.label}_{tuple(points)}" if g.label else None
    return Group(sub.strong_generators(), degree=g.degree, label=label, chain=sub)


def point_stabilizer(g: Group, a: int) -> Group:
    return pointwise_stabilizer(g, [a])


def random_element(g: Group, rng: random.Random, mode: str = "uniform") -> Permutation:
    """Random element of ``g``.

    ``mode="uniform"`` draws one transversal element per chain level, which is
    exactly uniform.  ``mode="fast"`` uses a product replacement generator
    cached on the handle per stream (no chain needed, approximately uniform).
    """
    if mode == "uniform":
        return Permutation(g.chain.random_images(rng), check=False)
    if mode == "fast":
        replacers = g._replacers
        entry = replacers.get(id(rng))
        if entry is None or entry[0] is not rng:
            entry = (rng, ProductReplacement(g, rng))
            replacers[id(rng)] = entry
        return entry[1].next()
    raise ValueError(f"unknown mode {mode!r}")


class ProductReplacement:
    """Product replacement random elements (the "rattle"-free basic variant).

    Keeps ``slots`` elements seeded from the generators plus an accumulator;
    each step replaces a random slot by its product with another slot (or the
    inverse) and folds it into the accumulator.
    """

    def __init__(self, g: Group, rng: random.Random, slots: int = 10, burn_in: int = 50):
        self.rng = rng
        ident = tuple(range(g.degree))
        gens = [p.images for p in g.generators] or [ident]
        self.state = [gens[i % len(gens)] for i in range(max(slots, len(gens)))]
        self.acc = ident
        for _ in range(burn_in):
            self._step()

    def _step(self) -> Images:
        rng, state = self.rng, self.state
        i, j = rng.sample(range(len(state)), 2)
        other = state[j]
        if rng.random() < 0.5:
            other = _inv(other)
        if rng.random() < 0.5:
            state[i] = _mul(state[i], other)
        else:
            state[i] = _mul(other, state[i])
        self.acc = _mul(self.acc, state[i])
        return self.acc

    def next(self) -> Permutation:
        return Permutation(self._step(), check=False)


def closure(generators: Sequence[Permutation], degree: int, limit: int = 10**6) -> set[Images]:
    """Brute-force closure of the generators; test oracle for small groups."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [g.images for g in generators]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _mul(x, s)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        raise RuntimeError(f"closure exceeds {limit} elements")
                    nxt.append(y)
        frontier = nxt
    return seen
