"""Permutations on {0, ..., n-1} stored as image tuples.

Composition is left to right: ``p * q`` applies ``p`` first, then ``q``,
so ``a ** (p * q) == (a ** p) ** q`` in exponent notation.  Conjugation
follows the same convention, ``x ** g == g**-1 * x * g``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if not 0 <= a < degree:
                    raise ValueError(f"point {a} out of range for degree {degree}")
                if a in seen:
                    raise ValueError(f"point {a} appears in two cycles")
                seen.add(a)
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __rpow__(self, a: int) -> int:
        # point ** perm, the exponent notation for the image of a point
        return self.images[a]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)}, degree={self.degree})"

    def is_identity(self) -> bool:
        return all(i == a for i, a in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            a = self.images[start]
            while a != start:
                seen[a] = True
                cycle.append(a)
                a = self.images[a]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths (fixed points included) in descending order."""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def fixed_points(self) -> list[int]:
        return [i for i, a in enumerate(self.images) if i == a]

    def num_fixed(self) -> int:
        return sum(1 for i, a in enumerate(self.images) if i == a)

    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.images) if i != a]

    def order(self) -> int:
        return element_order(self)


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if len(p.images) != len(q.images):
        raise ValueError(f"degree mismatch: {len(p.images)} != {len(q.images)}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation mapping ``i`` to ``q(p(i))``."""
    _check_degrees(p, q)
    return Permutation(map(q.images.__getitem__, p.images), check=False)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p.images)
    for i, a in enumerate(p.images):
        inv[a] = i
    return Permutation(inv, check=False)


def conjugate(x: Permutation, g: Permutation) -> Permutation:
    """Return ``g**-1 * x * g``; its fixed points are the images under g of those of x."""
    _check_degrees(x, g)
    # x^g sends a^g to (a^x)^g
    images = [0] * len(x.images)
    gi = g.images
    for a, b in enumerate(x.images):
        images[gi[a]] = gi[b]
    return Permutation(images, check=False)


def element_order(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in p.cycles(include_fixed=True))) if p.images else 1


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(0 1 2)(3,4)"``; ``"()"`` is the identity."""
    stripped = text.strip()
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"could not parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        body = body.replace(",", " ").split()
        if body:
            cycles.append([int(tok) for tok in body])
    return Permutation.from_cycles(cycles, degree)


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)
