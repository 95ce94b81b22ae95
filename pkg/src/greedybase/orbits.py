"""Orbits, suborbit profiles, rank bounds and coset actions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .chain import Images, _mul
from .group import Group, point_stabilizer
from .perm import Permutation


class NotTransitiveError(ValueError):
    pass


class CapExceededError(RuntimeError):
    pass


def orbit(g: Group, a: int) -> frozenset[int]:
    if not 0 <= a < g.degree:
        raise ValueError(f"point {a} out of range for degree {g.degree}")
    gens = [s.images for s in g.generators]
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for s in gens:
            y = s[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def canonical_order(parts: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    """Sort point sets by size descending, then by least element."""
    parts = [tuple(sorted(p)) for p in parts]
    return sorted(parts, key=lambda p: (-len(p), p[0]))


def orbits(g: Group, points: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Orbit partition of ``points`` (default: all points), canonically ordered."""
    remaining = set(range(g.degree) if points is None else points)
    parts = []
    while remaining:
        o = orbit(g, min(remaining))
        parts.append(o)
        remaining -= o
    return canonical_order(parts)


def is_transitive(g: Group) -> bool:
    return g.degree == 0 or len(orbit(g, 0)) == g.degree


def _require_transitive(g: Group) -> None:
    if not is_transitive(g):
        raise NotTransitiveError(f"{g!r} is not transitive")


@dataclass
class SuborbitProfile:
    base_point: int
    suborbits: list[tuple[int, ...]]
    stabilizer_order: int
    subdegrees: list[int] = field(init=False)
    rank: int = field(init=False)
    largest_subdegree: int = field(init=False)
    largest_count: int = field(init=False)
    unique_largest: bool = field(init=False)

    def __post_init__(self):
        self.subdegrees = [len(o) for o in self.suborbits]
        self.rank = len(self.suborbits)
        self.largest_subdegree = self.subdegrees[0]
        self.largest_count = self.subdegrees.count(self.largest_subdegree)
        self.unique_largest = self.largest_count == 1

    @property
    def largest_suborbits(self) -> list[tuple[int, ...]]:
        return self.suborbits[: self.largest_count]

    def to_json(self) -> dict:
        return {
            "base_point": self.base_point,
            "subdegrees": self.subdegrees,
            "rank": self.rank,
            "largest_subdegree": self.largest_subdegree,
            "largest_count": self.largest_count,
            "unique_largest": self.unique_largest,
            "stabilizer_order": str(self.stabilizer_order),
        }


def suborbit_profile(g: Group, a: int) -> SuborbitProfile:
    _require_transitive(g)
    h = point_stabilizer(g, a)
    return SuborbitProfile(a, orbits(h), h.order)


def has_regular_suborbit(g: Group, a: int) -> bool:
    """Whether the stabiliser of ``a`` has an orbit of size equal to its order.

    For a nontrivial stabiliser this means ``a`` together with any point of
    that orbit is a base, so the minimal and the greedy base size are both 2.
    """
    profile = suborbit_profile(g, a)
    return profile.stabilizer_order in profile.subdegrees


def _same_group(x: Group, y: Group) -> bool:
    return (
        x.order == y.order
        and all(s in y for s in x.generators)
        and all(s in x for s in y.generators)
    )


def _check_orbit(g: Group, points: Iterable[int]) -> frozenset[int]:
    points = frozenset(points)
    if not points or orbit(g, min(points)) != points:
        raise ValueError(f"{sorted(points)} is not an orbit of {g!r}")
    return points


def suborbits_equivalent(g: Group, o1: Iterable[int], o2: Iterable[int]) -> bool:
    """Whether every point of ``o1`` has the same stabiliser in ``g`` as some point of ``o2``.

    Conjugating by ``t`` carries a matching pair (a, b) to (a^t, b^t) with b^t
    still in ``o2``, so checking one point of ``o1`` decides the whole orbit.
    """
    o1 = _check_orbit(g, o1)
    o2 = _check_orbit(g, o2)
    if len(o1) != len(o2):
        # stabiliser orders |g| / |orbit| differ
        return False
    a = min(o1)
    k = point_stabilizer(g, a)
    fixed = set(range(g.degree))
    for s in k.generators:
        fixed.intersection_update(s.fixed_points())
    for b in sorted(fixed & o2):
        if _same_group(k, point_stabilizer(g, b)):
            return True
    return False


def rank_subdegree_lower_bound(index: int, rank: int) -> Fraction:
    """Largest subdegree is at least the mean nontrivial subdegree (index - 1) / (rank - 1)."""
    if rank < 2:
        raise ValueError("rank must be at least 2")
    if index < 2:
        raise ValueError("index must be at least 2")
    return Fraction(index - 1, rank - 1)


def rank_burnside(g: Group, a: int, cap: int = 10**6) -> int:
    """Rank as the average number of fixed points over the point stabiliser."""
    _require_transitive(g)
    h = point_stabilizer(g, a)
    if h.order > cap:
        raise CapExceededError(f"stabiliser order {h.order} exceeds enumeration cap {cap}")
    total = sum(sum(1 for i, x in enumerate(p) if i == x) for p in h.chain.iter_images())
    rank, rem = divmod(total, h.order)
    assert rem == 0, "orbit counting gave a non-integer"
    return rank


@dataclass
class CosetAction:
    """Action of ``group`` on the right cosets of ``subgroup``.

    Point ``i`` is the coset ``subgroup * representatives[i]``; point 0 is the
    subgroup itself.
    """

    group: Group
    source: Group
    subgroup: Group
    representatives: list[Permutation]
    key: Callable[[Images], tuple]
    index_of: dict[tuple, int]

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def kernel_order(self) -> int:
        return self.source.order // self.group.order

    @property
    def faithful(self) -> bool:
        return self.kernel_order == 1

    def coset_of(self, x: Permutation) -> int:
        return self.index_of[self.key(x.images)]

    def image(self, x: Permutation) -> Permutation:
        images = [self.coset_of(r * x) for r in self.representatives]
        return Permutation(images, check=False)


def coset_key_function(g: Group, h: Group) -> Callable[[Images], tuple]:
    """Canonical label for the right coset ``h * x`` of an element ``x`` of ``g``.

    Picks, level by level along a chain of ``h`` sharing g's base, the element
    of ``h * x`` whose base images are lexicographically least; those base
    images identify the element because g's base is a base for g.
    """
    base = list(g.chain.base)
    hc = h.rebased(base)
    levels = [(b, hc.trans[i]) for i, b in enumerate(base)]

    def key(x: Images) -> tuple:
        cur = x
        for b, trans in levels:
            if len(trans) > 1:
                pt = min(trans, key=cur.__getitem__)
                cur = _mul(trans[pt], cur)
        return tuple(cur[b] for b in base)

    return key


def coset_action(g: Group, h: Group, cap: int = 10**6) -> CosetAction:
    for s in h.generators:
        if s.degree != g.degree or s not in g:
            raise ValueError("subgroup generator not in group")
    index = g.order // h.order
    if index > cap:
        raise CapExceededError(f"index {index} exceeds coset cap {cap}")
    key = coset_key_function(g, h)
    ident = tuple(range(g.degree))
    reps = [ident]
    index_of = {key(ident): 0}
    gens = [s.images for s in g.generators]
    tables = [[] for _ in gens]
    i = 0
    while i < len(reps):
        r = reps[i]
        for table, s in zip(tables, gens):
            y = _mul(r, s)
            k = key(y)
            j = index_of.get(k)
            if j is None:
                j = len(reps)
                index_of[k] = j
                reps.append(y)
            table.append(j)
        i += 1
    if len(reps) != index:
        raise RuntimeError(f"enumerated {len(reps)} cosets, expected {index}")
    label = f"{g.label or 'G'} on cosets of {h.label or 'H'}"
    action = Group([Permutation(t, check=False) for t in tables], degree=index, label=label)
    return CosetAction(
        group=action,
        source=g,
        subgroup=h,
        representatives=[Permutation(r, check=False) for r in reps],
        key=key,
        index_of=index_of,
    )
