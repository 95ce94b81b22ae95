import pytest

from greedybase import fixtures
from greedybase.orbits import is_transitive

ORDERS = {
    "S8": 40320,
    "A8": 20160,
    "D16": 16,
    "PSL27_7": 168,
    "PSL27_8": 168,
    "M11": 7920,
    "M11_12": 7920,
    "M12": 95040,
    "M22": 443520,
    "M23": 10200960,
    "M24": 244823040,
}


@pytest.mark.parametrize("name,order", ORDERS.items())
def test_orders(name, order):
    assert fixtures.load(name).order == order


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixtures.load("M13")


def test_corpus_filter():
    small = fixtures.corpus(max_order=200)
    assert "S5" in small and "M11" not in small
    assert set(fixtures.corpus()) == set(fixtures.names())


@pytest.mark.parametrize("name", ["M11", "M11_12", "M12", "M22", "M23", "M24", "PSL27_7", "PSL27_8"])
def test_transitive_actions(name):
    assert is_transitive(fixtures.load(name))
