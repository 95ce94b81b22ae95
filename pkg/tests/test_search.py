import random

import pytest

from greedybase import Group, fixtures, point_stabilizer, random_element
from greedybase.group import closure
from greedybase.orbits import CapExceededError, orbits, suborbit_profile
from greedybase.perm import Permutation, parse_cycles
from greedybase.search import conjugate_intersection_order, search_until_below


def _brute(g, h, x):
    hs = closure(h.generators, g.degree)
    xi = (~x).images
    count = 0
    for y in hs:
        # x y x^-1 under the right action
        z = tuple(x.images[y[xi[a]]] for a in range(g.degree))
        count += z in hs
    return count


def test_examples():
    s4 = fixtures.load("S4")
    h = point_stabilizer(s4, 3)
    assert conjugate_intersection_order(s4, h, parse_cycles("(0 1)", 4)) == 6
    assert conjugate_intersection_order(s4, h, parse_cycles("(2 3)", 4)) == 2
    v4 = Group([parse_cycles("(0 1)(2 3)", 4), parse_cycles("(0 2)(1 3)", 4)])
    for x in (parse_cycles("(0 1 2)", 4), parse_cycles("(2 3)", 4)):
        assert conjugate_intersection_order(s4, v4, x) == 4
    with pytest.raises(ValueError):
        conjugate_intersection_order(fixtures.load("A4"), point_stabilizer(fixtures.load("A4"), 0), parse_cycles("(0 1)", 4))


@pytest.mark.parametrize(
    "gname,hgens",
    [("S4", ["(0 1 2 3)"]), ("A5", ["(0 1 2)", "(0 1)(3 4)"]), ("PSL27_7", None), ("S5_pairs", None)],
)
def test_against_brute_force(gname, hgens):
    g = fixtures.load(gname)
    h = point_stabilizer(g, 0) if hgens is None else Group([parse_cycles(s, g.degree) for s in hgens])
    rng = random.Random(1)
    for _ in range(15):
        x = random_element(g, rng)
        m = conjugate_intersection_order(g, h, x)
        assert m == _brute(g, h, x)
        assert h.order % m == 0


def test_search_examples():
    s4 = fixtures.load("S4")
    h = point_stabilizer(s4, 3)
    out = search_until_below(s4, h, 7, 10, random.Random(0))
    assert out.success and out.iterations_used == 1
    out = search_until_below(s4, h, 3, 50, random.Random(0))
    assert out.success and out.intersection_order == 2 and out.iterations_used <= 10
    v4 = Group([parse_cycles("(0 1)(2 3)", 4), parse_cycles("(0 2)(1 3)", 4)])
    out = search_until_below(s4, v4, 4, 20, random.Random(0))
    assert not out.success and out.intersection_order == 4 and out.iterations_used == 20
    assert len(out.trace) == 20
    with pytest.raises(ValueError):
        search_until_below(s4, h, 0, 5, random.Random(0))


def test_reproducible_and_floor():
    g = fixtures.load("M11")
    h = point_stabilizer(g, 0)
    a = search_until_below(g, h, 1, 30, random.Random(5))
    b = search_until_below(g, h, 1, 30, random.Random(5))
    assert a == b
    k = point_stabilizer(g, 0)
    floor = min(k.order // len(o) for o in orbits(k))
    assert min(a.trace) >= floor


def test_cap():
    g = fixtures.load("M12")
    with pytest.raises(CapExceededError):
        search_until_below(g, Group([], degree=12), 2, 3, random.Random(0), cap=1000)
