"""Random search for conjugates H^x meeting H in a small subgroup."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .group import Group, pointwise_stabilizer, random_element
from .orbits import CosetAction, coset_action
from .perm import Permutation


@dataclass
class SearchOutcome:
    conjugator: Permutation
    intersection_order: int
    iterations_used: int
    threshold: int
    success: bool
    trace: list[int] = field(default_factory=list)

    def to_json(self, verbose: bool = False) -> dict:
        out = {
            "conjugator": list(self.conjugator.images),
            "intersection_order": str(self.intersection_order),
            "iterations_used": self.iterations_used,
            "threshold": str(self.threshold),
            "success": self.success,
        }
        if verbose:
            out["trace"] = [str(m) for m in self.trace]
        return out


def _intersection_order(action: CosetAction, x: Permutation) -> int:
    # H ∩ H^x is the stabiliser of the cosets H and Hx; the kernel of the
    # action lies in every such stabiliser
    pts = sorted({0, action.coset_of(x)})
    return pointwise_stabilizer(action.group, pts).order * action.kernel_order


def conjugate_intersection_order(g: Group, h: Group, x: Permutation, cap: int = 10**6) -> int:
    """|H ∩ x⁻¹Hx|, from the two-point stabiliser in the action on cosets of H."""
    if x.degree != g.degree or x not in g:
        raise ValueError("conjugating element is not in the group")
    return _intersection_order(coset_action(g, h, cap), x)


def search_until_below(
    g: Group,
    h: Group,
    threshold: int,
    max_iters: int,
    rng: random.Random,
    cap: int = 10**6,
) -> SearchOutcome:
    """Sample x until |H ∩ H^x| < threshold; report the best sample seen."""
    if threshold < 1 or max_iters < 1:
        raise ValueError("threshold and max_iters must be at least 1")
    action = coset_action(g, h, cap)
    best = None
    trace = []
    for i in range(1, max_iters + 1):
        x = random_element(g, rng)
        m = _intersection_order(action, x)
        trace.append(m)
        if best is None or m < best[1]:
            best = (x, m)
        if m < threshold:
            break
    x, m = best
    return SearchOutcome(x, m, len(trace), threshold, m < threshold, trace)
