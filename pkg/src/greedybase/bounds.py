"""Fixed point ratios, the prime-order union bound Q̂, and exact certificates.

Every threshold that involves ``sqrt(1 - Q̂)`` is decided by squaring in
exact rational arithmetic; no square root is ever evaluated.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .classes import (
    ClassData,
    ConjClass,
    class_data_from_groups,
    fused_intersection_size,
    prime_order_class_reps,
)
from .greedy import StabilizerTree
from .group import Group, point_stabilizer
from .orbits import NotTransitiveError, is_transitive, orbits, suborbit_profile, suborbits_equivalent
from .perm import Permutation

Exact = Union[int, Fraction]


class UncertifiedError(ValueError):
    """Class data is not known to cover every prime-order class."""


class InapplicableError(ValueError):
    """A hypothesis needed to even state the bound fails (e.g. Q̂ >= 1)."""


# -- fixed point ratios ---------------------------------------------------


def fpr_action(g: Group, x: Permutation) -> Fraction:
    """Proportion of points fixed by ``x``."""
    if x.degree != g.degree:
        raise ValueError(f"degree mismatch: {x.degree} != {g.degree}")
    return Fraction(x.num_fixed(), g.degree)


def fpr_class(intersection: int, class_size: int) -> Fraction:
    """|x^G ∩ H| / |x^G|."""
    if class_size < 1 or not 0 <= intersection <= class_size:
        raise ValueError(f"need 0 <= {intersection} <= {class_size} and class size >= 1")
    return Fraction(intersection, class_size)


@dataclass
class FprEntry:
    cls: ConjClass
    intersection: int
    fpr: Fraction


@dataclass
class FprTable:
    source: str
    entries: list[FprEntry]
    index: int
    certified: bool

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "index": str(self.index),
            "certified": self.certified,
            "entries": [
                {
                    "class": e.cls.name,
                    "element_order": e.cls.element_order,
                    "size": str(e.cls.size),
                    "intersection": str(e.intersection),
                    "fpr": rational_json(e.fpr),
                }
                for e in self.entries
            ],
        }


def fpr_table_for_stabilizer(
    g: Group, a: int, mode: str = "auto", rng: random.Random | None = None
) -> FprTable:
    """Fixed point ratios of the prime-order classes in the action of ``g`` itself.

    The point ``a`` only names the stabiliser H; ratios are fixed-point counts.
    """
    if not is_transitive(g):
        raise NotTransitiveError("fixed point ratio tables need a transitive action")
    if not 0 <= a < g.degree:
        raise ValueError(f"point {a} out of range")
    classes = prime_order_class_reps(g, mode, rng)
    entries = []
    for c in classes:
        f = fpr_action(g, c.representative)
        entries.append(FprEntry(c, int(f * c.size), f))
    return FprTable("live", entries, g.degree, classes.certified)


def fpr_table_from_class_data(d: ClassData) -> FprTable:
    """Ratios |x^G ∩ H| / |x^G| from class sizes and fusion (prime-order classes only)."""
    entries = []
    for j, c in enumerate(d.group_classes):
        if not _is_prime(c.element_order):
            continue
        m = fused_intersection_size(d, j)
        entries.append(FprEntry(c, m, fpr_class(m, c.size)))
    return FprTable("ingested", entries, d.index, d.complete)


def fpr_table_for_subgroup(
    g: Group, h: Group, mode: str = "auto", rng: random.Random | None = None
) -> FprTable:
    """Ratios for the action on cosets of ``h``, via live class fusion."""
    table = fpr_table_from_class_data(class_data_from_groups(g, h, mode, rng))
    table.source = "live"
    return table


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def qhat(table: FprTable, c: int) -> Fraction:
    """Sum over prime-order classes of |x^G| * fpr(x)^c.

    An upper bound on the probability that a uniform c-tuple is not a base;
    it can exceed 1 and is reported as is.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    if not table.certified:
        raise UncertifiedError("Q̂ needs class data certified to contain every prime-order class")
    return sum((e.cls.size * e.fpr**c for e in table.entries), Fraction(0))


# -- certificates ---------------------------------------------------------


def rational_json(v: Exact) -> dict:
    v = Fraction(v)
    return {"num": str(v.numerator), "den": str(v.denominator)}


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or an integer; floating point syntax is rejected."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r} (expected num/den)") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)


@dataclass
class Hypothesis:
    name: str
    holds: bool
    value: Exact | None = None
    assumed: bool = False

    def to_json(self) -> dict:
        out = {"name": self.name, "checked": self.holds, "assumed": self.assumed}
        if self.value is not None:
            out["value"] = rational_json(self.value)
        return out


@dataclass
class Certificate:
    kind: str
    conclusion: str
    hypotheses: list[Hypothesis] = field(default_factory=list)
    values: dict[str, Exact] = field(default_factory=dict)

    @property
    def established(self) -> bool:
        return bool(self.hypotheses) and all(h.holds for h in self.hypotheses)

    @property
    def verdict(self) -> str:
        return "established" if self.established else "not-established"

    def check(self, name: str, holds: bool, value: Exact | None = None, assumed: bool = False):
        self.hypotheses.append(Hypothesis(name, bool(holds), value, assumed))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "conclusion": self.conclusion,
            "verdict": self.verdict,
            "hypotheses": [h.to_json() for h in self.hypotheses],
            "values": {k: rational_json(v) for k, v in self.values.items()},
        }


def lemma_q_certificate(qhat_value: Exact, c: int) -> Certificate:
    q = Fraction(qhat_value)
    cert = Certificate("lemma-Q", f"b(G) <= {c}", values={"qhat": q})
    cert.check(f"Q̂(G,{c}) < 1", q < 1, q)
    return cert


def _check_q(q: Fraction) -> None:
    if not 0 <= q < 1:
        raise InapplicableError(f"need 0 <= Q̂ < 1, got {q}")


def subdegree_exceeds_d(d: int, index: int, qhat3: Exact) -> bool:
    """Whether d > index * (1 - sqrt(1 - qhat3)).

    With r = 1 - d/index >= 0 this is r < sqrt(1 - qhat3), i.e. r**2 < 1 - qhat3.
    """
    q = Fraction(qhat3)
    _check_q(q)
    if not 1 <= d <= index:
        raise ValueError(f"need 1 <= d <= index, got d={d}, index={index}")
    r = 1 - Fraction(d, index)
    return r * r < 1 - q


def prop_key_certificate(d: int, index: int, qhat3: Exact) -> Certificate:
    q = Fraction(qhat3)
    cert = Certificate("prop-key", "greedy base size <= 3", values={"qhat3": q, "d": d, "index": index})
    cert.check("Q̂(G,3) < 1", q < 1, q)
    if 0 <= q < 1 and 1 <= d <= index:
        r = 1 - Fraction(d, index)
        cert.values["(1-d/index)^2"] = r * r
        cert.check("subdegree d > D(G,H)", r * r < 1 - q, d)
    else:
        cert.check("subdegree d > D(G,H)", False, d)
    return cert


def subgroup_intersection_below_s(m: int, h_order: int, g_order: int, qhat3: Exact) -> bool:
    """Whether m < |H|^2 / (|G| (1 - sqrt(1 - qhat3))).

    Q̂ = 0 makes the bound infinite (the same limit that makes D zero).
    Otherwise, with t = |H|^2 / (|G| m), the test is 1 - t < sqrt(1 - Q̂):
    automatically true when t >= 1, else (1 - t)**2 < 1 - Q̂.
    """
    q = Fraction(qhat3)
    _check_q(q)
    if m < 1:
        raise ValueError("m must be positive")
    if q == 0:
        return True
    t = Fraction(h_order * h_order, g_order * m)
    if t >= 1:
        return True
    return (1 - t) ** 2 < 1 - q


def cor_int_certificate(m: int, h_order: int, g_order: int, qhat3: Exact) -> Certificate:
    q = Fraction(qhat3)
    _check_q(q)
    cert = Certificate(
        "cor-int",
        "greedy base size <= 3",
        values={"qhat3": q, "m": m, "h_order": h_order, "g_order": g_order},
    )
    cert.check("Q̂(G,3) < 1", True, q)
    if m > h_order:
        cert.check("|H ∩ H^g| <= |H|", False, m)
    if m >= 1:
        cert.values["t"] = Fraction(h_order * h_order, g_order * m)
        cert.check("|H ∩ H^g| < S(G,H)", subgroup_intersection_below_s(m, h_order, g_order, q), m)
    else:
        cert.check("|H ∩ H^g| < S(G,H)", False, m)
    return cert


def bound_comparison_certificate(kind: str, value: int, bound: Exact, conclusion: str) -> Certificate:
    """Strict comparison against a bound supplied by the caller.

    ``kind="cor-int"``: value is |H ∩ H^g| and bound a lower bound on S(G,H);
    ``kind="prop-key"``: value is an upper bound on D(G,H) and bound a lower
    bound on the largest subdegree.
    """
    bound = Fraction(bound)
    cert = Certificate(kind, conclusion, values={"value": value, "bound": bound})
    cert.check("supplied bound", True, bound, assumed=True)
    cert.check(f"{value} < {bound}", value < bound, value)
    return cert


@dataclass
class Greedy4Terms:
    p3: Fraction
    p2: Fraction
    q3: Fraction
    q2: Fraction
    p: Fraction


def greedy4_terms(n: int, d1: int, paired_size: int) -> Greedy4Terms:
    """Probabilities behind the four-point greedy argument.

    p3: all three later points of a 4-tuple land in the largest suborbit;
    p2: exactly two do; q3 / q2: given three / two points there, one of the
    later ones lands in a fixed union of paired 2-point-stabiliser orbits.
    """
    x = Fraction(d1, n)
    y = Fraction(paired_size, d1)
    p3 = x**3
    p2 = 3 * x**2 * (1 - x)
    q3 = 2 * y - y * y
    q2 = y
    return Greedy4Terms(p3, p2, q3, q2, p3 * q3 + p2 * q2)


def greedy4_certificate(
    n: int,
    d1: int,
    paired_size: int,
    qhat4: Exact,
    unique_largest: bool = True,
    paired: bool = True,
) -> Certificate:
    """Certificate that the greedy base size is at most 4.

    ``unique_largest`` and ``paired`` are structural facts about the action
    the caller vouches for; they are recorded as assumptions
    (see :func:`greedy4_structure` to check them on a live group).
    """
    q = Fraction(qhat4)
    if not 1 <= paired_size <= d1 <= n:
        raise ValueError(f"need 1 <= paired_size <= d1 <= n, got {paired_size}, {d1}, {n}")
    _check_q(q)
    terms = greedy4_terms(n, d1, paired_size)
    cert = Certificate(
        "greedy4",
        "greedy base size <= 4",
        values={
            "P3": terms.p3,
            "P2": terms.p2,
            "q3": terms.q3,
            "q2": terms.q2,
            "p": terms.p,
            "qhat4": q,
            "p + (1 - qhat4)": terms.p + 1 - q,
        },
    )
    cert.check("unique largest suborbit", unique_largest, d1, assumed=True)
    cert.check("largest 2-point-stabiliser orbits come in equivalent pairs", paired, paired_size, assumed=True)
    cert.check("Q̂(G,4) < 1", q < 1, q)
    cert.check("p + (1 - Q̂(G,4)) > 1", terms.p + (1 - q) > 1, terms.p + 1 - q)
    return cert


@dataclass
class Greedy4Structure:
    degree: int
    d1: int
    unique_largest: bool
    d: int
    paired: bool

    @property
    def paired_size(self) -> int:
        return 2 * self.d


def greedy4_structure(g: Group, a: int) -> Greedy4Structure:
    """Check the structural hypotheses of the four-point argument on a live group."""
    profile = suborbit_profile(g, a)
    largest = set(profile.suborbits[0])
    beta = min(largest)
    k = point_stabilizer(point_stabilizer(g, a), beta)
    parts = orbits(k)
    d = len(parts[0])
    top = [o for o in parts if len(o) == d]
    paired = all(
        set(o) <= largest
        and any(o2 != o and suborbits_equivalent(k, o, o2) for o2 in top)
        for o in top
    )
    return Greedy4Structure(g.degree, len(largest), profile.unique_largest, d, paired)


# -- base probabilities ---------------------------------------------------


def count_nonbase_tuples(g: Group, c: int, replacement: bool = True) -> int:
    """Number of c-tuples of points (ordered) that are not bases, counted exactly.

    Tuples are grouped by orbits of the stabiliser of their prefix: a point's
    orbit-mates give conjugate stabilisers and hence equal counts.
    """
    tree = StabilizerTree(g)

    def rec(prefix: list[int], depth: int) -> int:
        k = tree.stabilizer(prefix)
        if k.order == 1:
            return 0
        if depth == 0:
            return 1
        total = 0
        for o in tree.orbits(prefix):
            if not replacement and len(o) == 1 and o[0] in prefix:
                continue
            prefix.append(o[0])
            total += len(o) * rec(prefix, depth - 1)
            prefix.pop()
        return total

    return rec([], c)


def exact_q(g: Group, c: int, replacement: bool = True) -> Fraction:
    """Probability that a uniform c-tuple is not a base."""
    n = g.degree
    tuples = n**c if replacement else math.perm(n, c)
    if tuples == 0:
        raise ValueError("no tuples of that length")
    return Fraction(count_nonbase_tuples(g, c, replacement), tuples)


def monte_carlo_q(
    g: Group, c: int, trials: int, rng: random.Random, replacement: bool = True
) -> tuple[Fraction, Fraction]:
    """Fraction of sampled c-tuples that are not bases, and its binomial standard error.

    The standard error is irrational in general; it is returned as the exact
    rational value of the float square root.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    tree = StabilizerTree(g)
    points = range(g.degree)
    misses = 0
    for _ in range(trials):
        pts = [rng.choice(points) for _ in range(c)] if replacement else rng.sample(points, c)
        if tree.stabilizer(pts).order > 1:
            misses += 1
    est = Fraction(misses, trials)
    stderr = Fraction(math.sqrt(est * (1 - est) / trials))
    return est, stderr


# names matching the documented operation list
subdegree_exceeds_D = subdegree_exceeds_d
monte_carlo_Q = monte_carlo_q
