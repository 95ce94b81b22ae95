import random
from collections import Counter

import pytest
from hypothesis import given, settings

from greedybase import (
    Group,
    Permutation,
    conjugate,
    contains,
    group_order,
    point_stabilizer,
    pointwise_stabilizer,
    random_element,
)
from greedybase import fixtures
from greedybase.chain import schreier_sims
from greedybase.greedy import is_base
from greedybase.group import closure

from strategies import perm_lists

SMALL = [n for n, g in fixtures.corpus(max_order=5000).items()]


@pytest.mark.parametrize("name", SMALL)
def test_order_and_membership_match_closure(name):
    g = fixtures.load(name)
    elems = closure(g.generators, g.degree)
    assert group_order(g) == len(elems)
    rng = random.Random(3)
    for _ in range(50):
        images = list(range(g.degree))
        rng.shuffle(images)
        p = Permutation(images)
        assert contains(g, p) == (p.images in elems)


@pytest.mark.parametrize("name", SMALL)
def test_chain_verifies(name):
    assert fixtures.load(name).chain.verify()


@settings(max_examples=60, deadline=None)
@given(perm_lists())
def test_random_generators_against_closure(data):
    n, gens = data
    g = Group(gens, degree=n)
    elems = closure(gens, n)
    assert g.order == len(elems)
    for e in list(elems)[:30]:
        assert Permutation(e) in g


def test_known_orders():
    assert fixtures.load("S8").order == 40320
    assert fixtures.load("M24").order == 244823040
    assert Group([], degree=4).order == 1


def test_base_prefix_is_respected():
    g = fixtures.load("S5")
    chain = schreier_sims([p.images for p in g.generators], 5, base_prefix=(3, 1))
    assert chain.base[:2] == [3, 1]
    assert chain.order == 120


@pytest.mark.parametrize("name", ["S4", "PSL27_7", "M11", "M12", "E16_trap"])
def test_orbit_stabilizer(name):
    from greedybase.orbits import orbit

    g = fixtures.load(name)
    for a in range(g.degree):
        assert len(orbit(g, a)) * point_stabilizer(g, a).order == g.order


def test_pointwise_stabilizer_examples():
    s4 = fixtures.load("S4")
    assert pointwise_stabilizer(s4, [0, 1]).order == 2
    assert pointwise_stabilizer(s4, [0, 1, 2]).order == 1
    assert pointwise_stabilizer(s4, []).order == 24
    m24 = fixtures.load("M24")
    assert pointwise_stabilizer(m24, [0, 1, 2, 3, 4]).order == 48
    with pytest.raises(ValueError):
        pointwise_stabilizer(s4, [7])


@pytest.mark.parametrize("name", ["S4", "C6", "E16_trap", "M11"])
def test_trivial_stabilizer_iff_base(name):
    g = fixtures.load(name)
    rng = random.Random(5)
    for _ in range(30):
        pts = rng.sample(range(g.degree), rng.randint(0, min(4, g.degree)))
        assert (pointwise_stabilizer(g, pts).order == 1) == is_base(g, pts)


def test_random_elements_in_group():
    rng = random.Random(0)
    for name in ["A5", "M12", "E16_trap"]:
        g = fixtures.load(name)
        for mode in ("uniform", "fast"):
            for _ in range(20):
                x = random_element(g, rng, mode=mode)
                assert x in g
                y = random_element(g, rng, mode=mode)
                assert conjugate(x, y) in g
    assert random_element(Group([], degree=3), rng).is_identity()


def test_uniform_sampling_chi_square():
    g = fixtures.load("C6")
    rng = random.Random(11)
    counts = Counter(random_element(g, rng).images for _ in range(6000))
    assert len(counts) == 6
    stat = sum((c - 1000) ** 2 / 1000 for c in counts.values())
    # chi-square critical value for 5 degrees of freedom at p = 0.001
    assert stat < 20.515


def test_random_element_reproducible():
    g = fixtures.load("M11")
    a = [random_element(g, random.Random(9)) for _ in range(3)]
    b = [random_element(g, random.Random(9)) for _ in range(3)]
    assert a == b
