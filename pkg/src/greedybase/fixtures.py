"""Built-in permutation group fixtures.

Each fixture is checked against its known order when loaded.  The Mathieu
groups use the standard generators distributed with GAP (``MathieuGroup``),
renumbered from 1-based to 0-based points.
"""

from __future__ import annotations

import itertools
import math
import re
from functools import lru_cache
from typing import Callable

from .group import Group
from .perm import Permutation, parse_cycles


def _gap(text: str, degree: int) -> Permutation:
    """Parse 1-based GAP cycle notation."""
    shifted = re.sub(r"\d+", lambda m: str(int(m.group()) - 1), text)
    return parse_cycles(shifted, degree)


def _checked(gens, degree: int, label: str, order: int) -> Group:
    g = Group(gens, degree=degree, label=label)
    if g.order != order:
        raise RuntimeError(f"fixture {label}: order {g.order}, expected {order}")
    return g


def symmetric(n: int) -> Group:
    gens = []
    if n >= 2:
        gens = [Permutation.from_cycles([(0, 1)], n), Permutation.from_cycles([tuple(range(n))], n)]
    return _checked(gens, n, f"S{n}", math.factorial(n))


def alternating(n: int) -> Group:
    if n < 3:
        return _checked([], n, f"A{n}", 1)
    gens = [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return _checked(gens, n, f"A{n}", math.factorial(n) // 2)


def cyclic(n: int) -> Group:
    """Regular cyclic group of order n."""
    gens = [Permutation.from_cycles([tuple(range(n))], n)] if n > 1 else []
    return _checked(gens, n, f"C{n}", n)


def dihedral(n: int) -> Group:
    """Symmetries of the regular n-gon acting on its vertices (order 2n)."""
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(-i) % n for i in range(n)])
    return _checked([rot, ref], n, f"D{2 * n}", 2 * n)


def psl27_on_7() -> Group:
    """PSL(2,7) = GL(3,2) acting on the 7 nonzero vectors of GF(2)^3."""
    vectors = [v for v in itertools.product((0, 1), repeat=3) if any(v)]
    idx = {v: i for i, v in enumerate(vectors)}

    def act(m):
        return Permutation(
            idx[tuple(sum(v[j] * m[j][i] for j in range(3)) % 2 for i in range(3))]
            for v in vectors
        )

    companion = ((0, 1, 0), (0, 0, 1), (1, 1, 0))
    transvection = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    return _checked([act(companion), act(transvection)], 7, "PSL(2,7) on 7", 168)


def psl27_on_8() -> Group:
    """PSL(2,7) on the projective line over GF(7); point 7 is infinity."""
    inf = 7

    def moebius(f: Callable[[int], int]) -> Permutation:
        return Permutation(f(x) for x in range(8))

    shift = moebius(lambda x: inf if x == inf else (x + 1) % 7)
    scale = moebius(lambda x: inf if x == inf else (2 * x) % 7)
    invert = moebius(lambda x: 0 if x == inf else inf if x == 0 else (-pow(x, 5, 7)) % 7)
    return _checked([shift, scale, invert], 8, "PSL(2,7) on 8", 168)


def mathieu11() -> Group:
    gens = ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"]
    return _checked([_gap(s, 11) for s in gens], 11, "M11", 7920)


def mathieu11_on_12() -> Group:
    """M11 acting 3-transitively on the 12 cosets of PSL(2,11)."""
    gens = [
        (0, 2, 3, 5, 6, 8, 10, 9, 11, 1, 7, 4),
        (1, 0, 4, 2, 7, 9, 8, 3, 10, 5, 11, 6),
    ]
    return _checked([Permutation(g) for g in gens], 12, "M11 on 12", 7920)


def mathieu12() -> Group:
    gens = [
        "(1,2,3,4,5,6,7,8,9,10,11)",
        "(3,7,11,8)(4,10,5,6)",
        "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)",
    ]
    return _checked([_gap(s, 12) for s in gens], 12, "M12", 95040)


def mathieu22() -> Group:
    gens = [
        "(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)",
        "(1,4,5,9,3)(2,8,10,7,6)(12,15,16,20,14)(13,19,21,18,17)",
        "(1,21)(2,10,8,6)(3,13,4,17)(5,19,9,18)(11,22)(12,14,16,20)",
    ]
    return _checked([_gap(s, 22) for s in gens], 22, "M22", 443520)


def mathieu23() -> Group:
    gens = [
        "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
        "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
    ]
    return _checked([_gap(s, 23) for s in gens], 23, "M23", 10200960)


def mathieu24() -> Group:
    gens = [
        "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
        "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
        "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)",
    ]
    return _checked([_gap(s, 24) for s in gens], 24, "M24", 244823040)


def on_subsets(g: Group, k: int, label: str | None = None) -> Group:
    """Induced action of ``g`` on the k-element subsets of its points."""
    subsets = list(itertools.combinations(range(g.degree), k))
    idx = {s: i for i, s in enumerate(subsets)}
    gens = [
        Permutation(idx[tuple(sorted(p.images[a] for a in s))] for s in subsets)
        for p in g.generators
    ]
    return Group(gens, degree=len(subsets), label=label or f"{g.label} on {k}-sets")


def s4_on_pairs() -> Group:
    g = on_subsets(symmetric(4), 2, label="S4 on pairs")
    if g.order != 24:
        raise RuntimeError("S4 on pairs is not faithful")
    return g


def elementary_abelian_trap() -> Group:
    """C2^4 on three orbits of size 4 with kernels <e1,e2>, <e3,e4>, <e1,e3>.

    Two points from the first two orbits form a base, but a greedy run that
    starts in the third orbit needs three points.
    """
    coords = [lambda v: (v[2], v[3]), lambda v: (v[0], v[1]), lambda v: (v[1], v[3])]
    gens = []
    for i in range(4):
        e = [0] * 4
        e[i] = 1
        images = []
        for j, f in enumerate(coords):
            t0, t1 = f(e)
            for p in range(4):
                images.append(4 * j + ((((p >> 1) ^ t0) << 1) | ((p & 1) ^ t1)))
        gens.append(Permutation(images))
    return _checked(gens, 12, "C2^4 trap", 16)


_REGISTRY: dict[str, Callable[[], Group]] = {
    **{f"S{n}": (lambda n=n: symmetric(n)) for n in range(2, 9)},
    **{f"A{n}": (lambda n=n: alternating(n)) for n in range(3, 9)},
    **{f"C{n}": (lambda n=n: cyclic(n)) for n in (2, 3, 4, 5, 6, 7)},
    **{f"D{2 * n}": (lambda n=n: dihedral(n)) for n in (4, 5, 6, 8)},
    "PSL27_7": psl27_on_7,
    "PSL27_8": psl27_on_8,
    "S4_pairs": s4_on_pairs,
    "S5_pairs": lambda: on_subsets(symmetric(5), 2, label="S5 on pairs"),
    "E16_trap": elementary_abelian_trap,
    "M11": mathieu11,
    "M11_12": mathieu11_on_12,
    "M12": mathieu12,
    "M22": mathieu22,
    "M23": mathieu23,
    "M24": mathieu24,
}


def names() -> list[str]:
    return list(_REGISTRY)


@lru_cache(maxsize=None)
def load(name: str) -> Group:
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(_REGISTRY)}") from None
    return factory()


def corpus(max_order: int | None = None) -> dict[str, Group]:
    """All fixtures, optionally restricted to groups of order at most ``max_order``."""
    out = {}
    for name in _REGISTRY:
        g = load(name)
        if max_order is None or g.order <= max_order:
            out[name] = g
    return out
