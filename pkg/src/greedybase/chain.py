"""Base and strong generating set (stabiliser chain) construction.

Internally permutations are plain image tuples; the hot loops (sifting,
orbit extension) are much faster without the wrapper objects.  Everything
leaving this module is wrapped back into :class:`Permutation`.

Two constructions are provided:

* :func:`schreier_sims` - deterministic Schreier-Sims.  Every Schreier
  generator is sifted, so the result is a verified BSGS.
* :func:`rebase` - rebuild a chain for a group whose order is already known
  (typically with a prescribed base prefix) by sifting uniform random
  elements.  The chain order can only equal the true order once every level
  generates the full stabiliser, so stopping at the known order is exact and
  no Monte Carlo error is possible.
"""

from __future__ import annotations

import random
from math import prod
from typing import Callable, Iterable, Iterator, Sequence

from .perm import Permutation

Images = tuple


def _mul(p: Images, q: Images) -> Images:
    return tuple(map(q.__getitem__, p))


def _inv(p: Images) -> Images:
    inv = [0] * len(p)
    for i, a in enumerate(p):
        inv[a] = i
    return tuple(inv)


def _first_moved(p: Images) -> int | None:
    for i, a in enumerate(p):
        if i != a:
            return i
    return None


class ChainBuildError(RuntimeError):
    pass


class StabilizerChain:
    """Nested point stabilisers G = G(0) >= G(1) >= ... >= G(k) = 1.

    Level ``i`` stores the base point ``base[i]``, strong generators of
    ``G(i)`` (those fixing ``base[:i]``) and a transversal mapping each point
    of the orbit ``base[i] ** G(i)`` to an element carrying ``base[i]`` there.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base: list[int] = []
        self.gens: list[list[Images]] = []
        self.trans: list[dict[int, Images]] = []
        self.inv_trans: list[dict[int, Images]] = []
        self._reps: list[list[Images]] | None = None

    # -- construction helpers -------------------------------------------

    def _append_level(self, point: int) -> None:
        self._reps = None
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: self.identity})
        self.inv_trans.append({point: self.identity})

    def _add_generator(self, level: int, g: Images) -> None:
        """Add ``g`` to level ``level`` and extend the orbit, keeping old representatives."""
        self._reps = None
        gens = self.gens[level]
        gens.append(g)
        trans = self.trans[level]
        inv_trans = self.inv_trans[level]
        queue = list(trans)
        new = []
        # apply the new generator to existing points, then close under all
        for a in queue:
            b = g[a]
            if b not in trans:
                u = _mul(trans[a], g)
                trans[b] = u
                inv_trans[b] = _inv(u)
                new.append(b)
        while new:
            a = new.pop()
            ua = trans[a]
            for s in gens:
                b = s[a]
                if b not in trans:
                    u = _mul(ua, s)
                    trans[b] = u
                    inv_trans[b] = _inv(u)
                    new.append(b)

    def sift(self, h: Images, start: int = 0) -> tuple[Images, int]:
        """Strip ``h`` through the levels from ``start``; return residue and the level reached."""
        base = self.base
        for level in range(start, len(base)):
            inv = self.inv_trans[level].get(h[base[level]])
            if inv is None:
                return h, level
            h = _mul(h, inv)
        return h, len(base)

    def _absorb(self, h: Images, start: int = 0) -> int | None:
        """Sift ``h``; if it does not reduce to the identity add the residue.

        Returns the deepest level that received a new generator, or None.
        """
        h, level = self.sift(h, start)
        if h == self.identity:
            return None
        if level == len(self.base):
            self._append_level(_first_moved(h))
        for lv in range(start, level + 1):
            self._add_generator(lv, h)
        return level

    # -- queries --------------------------------------------------------

    @property
    def order(self) -> int:
        return prod(len(t) for t in self.trans)

    @property
    def depth(self) -> int:
        return len(self.base)

    def contains_images(self, images: Images) -> bool:
        h, _ = self.sift(images)
        return h == self.identity

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} != {self.degree}")
        return self.contains_images(p.images)

    def strong_generators(self) -> list[Permutation]:
        return [Permutation(g, check=False) for g in (self.gens[0] if self.gens else [])]

    def level_generators(self, level: int) -> list[Permutation]:
        if level >= len(self.gens):
            return []
        return [Permutation(g, check=False) for g in self.gens[level]]

    def transversal(self, level: int) -> dict[int, Permutation]:
        return {a: Permutation(u, check=False) for a, u in self.trans[level].items()}

    def orbit(self, level: int) -> list[int]:
        return sorted(self.trans[level])

    def substabilizer(self, level: int) -> StabilizerChain:
        """The chain of ``G(level)``, the pointwise stabiliser of ``base[:level]``."""
        sub = StabilizerChain(self.degree)
        sub.base = self.base[level:]
        sub.gens = self.gens[level:]
        sub.trans = self.trans[level:]
        sub.inv_trans = self.inv_trans[level:]
        sub._reps = None
        return sub

    def random_images(self, rng: random.Random) -> Images:
        """Uniform random element: one random coset representative per level."""
        if self._reps is None:
            self._reps = [list(t.values()) for t in self.trans if len(t) > 1]
        g = self.identity
        for reps in reversed(self._reps):
            g = _mul(g, rng.choice(reps))
        return g

    def iter_images(self) -> Iterator[Images]:
        """Every group element exactly once."""
        levels = [list(t.values()) for t in self.trans]

        def rec(level: int, acc: Images) -> Iterator[Images]:
            if level < 0:
                yield acc
                return
            for u in levels[level]:
                yield from rec(level - 1, _mul(acc, u))

        yield from rec(len(levels) - 1, self.identity)

    def verify(self) -> bool:
        """Deterministic strong-generation check: every Schreier generator sifts to 1."""
        for level in range(len(self.base)):
            trans, inv_trans = self.trans[level], self.inv_trans[level]
            for a, ua in trans.items():
                for s in self.gens[level]:
                    sg = _mul(_mul(ua, s), inv_trans[s[a]])
                    h, _ = self.sift(sg, level + 1)
                    if h != self.identity:
                        return False
        return True


def schreier_sims(
    generators: Iterable[Images], degree: int, base_prefix: Sequence[int] = ()
) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    Base points beyond ``base_prefix`` are the smallest point moved by the
    generator that forced the extension.
    """
    chain = StabilizerChain(degree)
    for b in base_prefix:
        chain._append_level(b)
    gens = [tuple(g) for g in generators]
    gens = [g for g in gens if g != chain.identity]
    for g in gens:
        if all(g[b] == b for b in chain.base):
            chain._append_level(_first_moved(g))
    for g in gens:
        for level in range(len(chain.base)):
            chain._add_generator(level, g)
            if g[chain.base[level]] != chain.base[level]:
                break

    # checked[level] holds (point, generator index) pairs already known to
    # yield Schreier generators that sift to the identity below ``level``.
    # Orbits are only ever extended, so those verdicts stay valid.
    checked: list[set] = [set() for _ in chain.base]
    level = len(chain.base) - 1
    while level >= 0:
        while len(checked) < len(chain.base):
            checked.append(set())
        restart = None
        trans, inv_trans = chain.trans[level], chain.inv_trans[level]
        gens_l = chain.gens[level]
        done = checked[level]
        for a in list(trans):
            ua = trans[a]
            for k, s in enumerate(gens_l):
                if (a, k) in done:
                    continue
                sg = _mul(_mul(ua, s), inv_trans[s[a]])
                if sg != chain.identity:
                    h, reached = chain.sift(sg, level + 1)
                    if h != chain.identity:
                        if reached == len(chain.base):
                            chain._append_level(_first_moved(h))
                            checked.append(set())
                        for lv in range(level + 1, reached + 1):
                            chain._add_generator(lv, h)
                        restart = reached
                        break
                done.add((a, k))
            if restart is not None:
                break
        if restart is not None:
            level = restart
        else:
            level -= 1
    return chain


def rebase(
    order: int,
    degree: int,
    base_prefix: Sequence[int],
    sample: Callable[[], Images],
    seeds: Iterable[Images] = (),
    max_stall: int = 10_000,
) -> StabilizerChain:
    """Chain for a group of known ``order`` with the given base prefix.

    ``sample`` must return uniformly random elements of the group (any
    distribution with full support works, uniform just converges fastest).
    ``seeds`` are sifted first; they may be any elements of the group.
    """
    chain = StabilizerChain(degree)
    for b in base_prefix:
        chain._append_level(b)
    for g in seeds:
        chain._absorb(tuple(g))
    stall = 0
    while chain.order < order:
        if chain._absorb(sample()) is None:
            stall += 1
            if stall > max_stall:
                raise ChainBuildError(
                    f"random rebuild stalled at order {chain.order} (expected {order})"
                )
        else:
            stall = 0
    if chain.order != order:
        raise ChainBuildError(f"chain order {chain.order} exceeds known order {order}")
    return chain
