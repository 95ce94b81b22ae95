"""Backtrack search for elements conjugating one permutation to another.

Elements c with ``x ** c == y`` satisfy ``c(x(a)) == y(c(a))`` for every point
a.  Ordering the base cycle by cycle along x makes the image of every point
after a cycle's first point forced by the previous one, so the search tree
only branches at cycle starts and the number of leaves is ``|C_G(x)|`` when
``x`` and ``y`` are conjugate.
"""

from __future__ import annotations

from typing import Iterator

from .chain import _mul
from .group import Group
from .perm import Permutation


def _cycle_base(x: Permutation) -> list[int]:
    cycles = x.cycles(include_fixed=True)
    cycles.sort(key=lambda c: (-len(c), c[0]))
    return [a for c in cycles for a in c]


def _cycle_lengths(p: Permutation) -> list[int]:
    lengths = [0] * p.degree
    for c in p.cycles(include_fixed=True):
        for a in c:
            lengths[a] = len(c)
    return lengths


def conjugating_elements(g: Group, x: Permutation, y: Permutation) -> Iterator[Permutation]:
    """Yield every c in g with ``c**-1 * x * c == y``."""
    if x.degree != g.degree or y.degree != g.degree:
        raise ValueError("degree mismatch")
    if x.cycle_type() != y.cycle_type():
        return
    base = _cycle_base(x)
    chain = g.rebased(base)
    n = g.degree
    xi, yi = x.images, y.images
    xinv = _invert(xi)
    yinv = _invert(yi)
    xlen, ylen = _cycle_lengths(x), _cycle_lengths(y)
    pos = {b: i for i, b in enumerate(base)}
    trans = chain.trans
    inv_trans = chain.inv_trans
    last = max((i for i, t in enumerate(trans) if len(t) > 1), default=-1)
    img = [0] * n

    def dfs(i: int, p: tuple, pinv: tuple) -> Iterator[tuple]:
        if i > last:
            if all(p[xi[a]] == yi[p[a]] for a in range(n)):
                yield p
            return
        b = base[i]
        forced = None
        prev = xinv[b]
        if prev != b and pos[prev] < i:
            forced = yi[img[pos[prev]]]
        nxt = xi[b]
        if nxt != b and pos[nxt] < i:
            f2 = yinv[img[pos[nxt]]]
            if forced is not None and forced != f2:
                return
            forced = f2
        t = trans[i]
        if forced is not None:
            o = pinv[forced]
            if o not in t or ylen[forced] != xlen[b]:
                return
            img[i] = forced
            yield from dfs(i + 1, _mul(t[o], p), _mul(pinv, inv_trans[i][o]))
            return
        want = xlen[b]
        for o, u in t.items():
            gamma = p[o]
            if ylen[gamma] != want:
                continue
            img[i] = gamma
            yield from dfs(i + 1, _mul(u, p), _mul(pinv, inv_trans[i][o]))

    ident = tuple(range(n))
    for c in dfs(0, ident, ident):
        yield Permutation(c, check=False)


def _invert(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, a in enumerate(p):
        inv[a] = i
    return tuple(inv)


def conjugator(g: Group, x: Permutation, y: Permutation) -> Permutation | None:
    """Some c in g with ``x ** c == y``, or None when x and y are not conjugate in g."""
    return next(conjugating_elements(g, x, y), None)


def are_conjugate(g: Group, x: Permutation, y: Permutation) -> bool:
    return conjugator(g, x, y) is not None


def centralizer_order(g: Group, x: Permutation) -> int:
    return sum(1 for _ in conjugating_elements(g, x, x))
