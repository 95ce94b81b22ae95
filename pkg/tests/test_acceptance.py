"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) and also when this file is run as a script.
"""

from __future__ import annotations

import json
import random
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from greedybase import fixtures, point_stabilizer
from greedybase.bounds import (
    bound_comparison_certificate,
    fpr_action,
    fpr_table_for_stabilizer,
    greedy4_certificate,
    monte_carlo_q,
    prop_key_certificate,
    qhat,
    subdegree_exceeds_D,
)
from greedybase.classes import class_data_from_groups, fused_intersection_size
from greedybase.cli import run
from greedybase.greedy import (
    BudgetExceeded,
    StabilizerTree,
    base_size_exact,
    greedy_size_max,
    greedy_size_max_naive,
)
from greedybase.orbits import (
    has_regular_suborbit,
    is_transitive,
    rank_subdegree_lower_bound,
    suborbit_profile,
)

RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, detail: str, seconds: float) -> None:
    status = "PASS" if ok else "FAIL"
    RESULTS.append(f"[{status}] criterion {number:2d}: {title} ({detail}; {seconds:.3f}s)")


@lru_cache(maxsize=None)
def qhat3(name: str) -> Fraction:
    g = fixtures.load(name)
    return qhat(fpr_table_for_stabilizer(g, 0, rng=random.Random(1)), 3)


@lru_cache(maxsize=None)
def greedy_max(name: str) -> int:
    return greedy_size_max(fixtures.load(name))


@lru_cache(maxsize=None)
def exact_b(name: str) -> int:
    return base_size_exact(fixtures.load(name))


def transitive_corpus() -> list[str]:
    return [n for n in fixtures.names() if is_transitive(fixtures.load(n))]


def test_criterion_01_rank_bound_arithmetic():
    t = time.perf_counter()
    value = rank_subdegree_lower_bound(148642560, 14)
    dt = time.perf_counter() - t
    code, out, _ = run(["rank", "--index", "148642560", "--rank", "14", "--format", "json"])
    bound = json.loads(out)["results"]["subdegree_lower_bound"]
    ok = code == 0 and bound == {"num": "11434043", "den": "1"}
    ok = ok and value == 11434043 and dt < 1e-3
    record(1, "rank subdegree bound", ok, f"value {value}", dt)
    assert ok


def test_criterion_02_greedy4_certificate():
    t = time.perf_counter()
    cert = greedy4_certificate(13571955000, 11174042880, 3523215360, Fraction(3, 10))
    v = cert.values
    dt = time.perf_counter() - t
    checks = [
        cert.verdict == "established",
        v["P3"] > Fraction(558, 1000),
        v["P2"] > Fraction(359, 1000),
        v["q3"] > Fraction(531, 1000),
        v["q2"] > Fraction(315, 1000),
        v["p"] > Fraction(4, 10),
        v["p"] + (1 - Fraction(3, 10)) > 1,
        all(isinstance(x, (int, Fraction)) for x in v.values()),
    ]
    ok = all(checks) and dt < 1e-3
    record(2, "four-point greedy certificate", ok, f"{sum(checks)}/{len(checks)} checks", dt)
    assert ok


def test_criterion_03_displayed_comparisons():
    t = time.perf_counter()
    a = bound_comparison_certificate("cor-int", 1536, 4300, "greedy base size <= 3")
    b = bound_comparison_certificate("cor-int", 240, 790, "greedy base size <= 3")
    dt = time.perf_counter() - t
    cli = [run(["certify", "--compare", m, s, "--format", "json"]) for m, s in (("1536", "4300"), ("240", "790"))]
    via_cli = all(json.loads(out)["results"]["certificate"]["verdict"] == "established" for _, out, _ in cli)
    ok = a.established and b.established and via_cli and dt < 1e-3
    record(3, "displayed strict comparisons", ok, "1536 < 4300, 240 < 790", dt)
    assert ok


def test_criterion_04_greedy_equals_base_size():
    t = time.perf_counter()
    expected = {"M11": 4, "M11_12": None, "M12": 5, "M22": None, "M23": None, "M24": None}
    rows = []
    ok = True
    for name, forced in expected.items():
        g = fixtures.load(name)
        gm, b = greedy_size_max(g), base_size_exact(g)
        rows.append(f"{name}:{gm}/{b}")
        ok &= gm == b and (forced is None or gm == forced)
    dt = time.perf_counter() - t
    ok &= dt < 600
    record(4, "greedy max = base size on Mathieu groups", ok, " ".join(rows), dt)
    assert ok


def test_criterion_05_qhat_soundness():
    t = time.perf_counter()
    violations, checked, certified = [], 0, 0
    for name in transitive_corpus():
        g = fixtures.load(name)
        n = g.degree
        if n**3 > 10**6:
            continue
        tree = StabilizerTree(g)
        nonbase = sum(
            1
            for a in range(n)
            for b in range(n)
            for c in range(n)
            if tree.stabilizer([a, b, c]).order > 1
        )
        q = Fraction(nonbase, n**3)
        qh = qhat3(name)
        checked += 1
        if q > qh:
            violations.append(f"{name}: Q={q} > Q̂={qh}")
        if qh < 1:
            certified += 1
            if exact_b(name) > 3:
                violations.append(f"{name}: Q̂<1 but b={exact_b(name)}")
    dt = time.perf_counter() - t
    ok = not violations and dt < 300
    record(5, "Q(G,3) <= Q̂(G,3) sweep", ok, f"{checked} groups, {certified} with Q̂<1, {len(violations)} violations", dt)
    assert ok, violations


def test_criterion_06_prop_key_soundness():
    t = time.perf_counter()
    violations, established = [], 0
    for name in transitive_corpus():
        g = fixtures.load(name)
        q = qhat3(name)
        if q >= 1:
            continue
        for a in range(g.degree):
            d = suborbit_profile(g, a).largest_subdegree
            if not subdegree_exceeds_D(d, g.degree, q):
                continue
            if prop_key_certificate(d, g.degree, q).verdict != "established":
                violations.append(f"{name}@{a}: certificate disagrees")
            established += 1
            if greedy_max(name) > 3:
                violations.append(f"{name}@{a}: greedy max {greedy_max(name)}")
    dt = time.perf_counter() - t
    ok = not violations and dt < 300
    record(6, "subdegree > D implies greedy max <= 3", ok, f"{established} pairs, {len(violations)} violations", dt)
    assert ok, violations


def test_criterion_07_regular_suborbit():
    t = time.perf_counter()
    violations, hits = [], 0
    for name in transitive_corpus():
        g = fixtures.load(name)
        for a in range(g.degree):
            if point_stabilizer(g, a).order == 1 or not has_regular_suborbit(g, a):
                continue
            hits += 1
            if not exact_b(name) == greedy_max(name) == 2:
                violations.append(f"{name}@{a}: b={exact_b(name)}, greedy max={greedy_max(name)}")
    dt = time.perf_counter() - t
    ok = not violations and dt < 60
    record(7, "regular suborbit implies b = greedy max = 2", ok, f"{hits} pairs, {len(violations)} violations", dt)
    assert ok, violations


def test_criterion_08_fpr_duality():
    t = time.perf_counter()
    violations, compared = [], 0
    rng = random.Random(2)
    for name in transitive_corpus():
        g = fixtures.load(name)
        # stabilisers of different points are conjugate; large groups use two points
        points = range(g.degree) if g.order <= 10**5 else (0, g.degree - 1)
        for a in points:
            data = class_data_from_groups(g, point_stabilizer(g, a), rng=rng)
            if not data.complete:
                violations.append(f"{name}@{a}: class data incomplete")
            for j, c in enumerate(data.group_classes):
                compared += 1
                lhs = fpr_action(g, c.representative)
                rhs = Fraction(fused_intersection_size(data, j), c.size)
                if lhs != rhs:
                    violations.append(f"{name}@{a} {c.name}: {lhs} != {rhs}")
    dt = time.perf_counter() - t
    ok = not violations and dt < 120
    record(8, "fix-count ratio = class intersection ratio", ok, f"{compared} comparisons, {len(violations)} violations", dt)
    assert ok, violations


def test_criterion_09_backtrack_reduction():
    t = time.perf_counter()
    violations, compared, skipped = [], 0, []
    for name in fixtures.names():
        g = fixtures.load(name)
        try:
            naive = greedy_size_max_naive(g, budget=10**5)
        except BudgetExceeded:
            skipped.append(name)
            continue
        compared += 1
        if naive != greedy_max(name):
            violations.append(f"{name}: naive {naive} != {greedy_max(name)}")
    dt = time.perf_counter() - t
    ok = not violations and dt < 300
    detail = f"{compared} groups, beyond 10^5 nodes: {','.join(skipped) or 'none'}, {len(violations)} violations"
    record(9, "reduced backtrack = naive backtrack", ok, detail, dt)
    assert ok, violations


def test_criterion_10_monte_carlo():
    t = time.perf_counter()
    g = fixtures.load("S4")
    est, se = monte_carlo_q(g, 3, 10**5, random.Random(20240601))
    dt = time.perf_counter() - t
    ok = abs(est - Fraction(5, 8)) <= 3 * se and est <= Fraction(7, 8) + 3 * se and dt < 30
    record(10, "Monte Carlo Q(S4,3) near 5/8", ok, f"estimate {float(est):.5f} ± {float(se):.5f}", dt)
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
