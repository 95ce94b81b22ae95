"""Greedy and minimal base sizes of permutation groups, with exact probabilistic certificates."""

from .group import (
    Group,
    build_chain,
    contains,
    group_order,
    point_stabilizer,
    pointwise_stabilizer,
    random_element,
)
from .perm import Permutation, compose, conjugate, element_order, inverse

__version__ = "0.1.0"

__all__ = [
    "Group",
    "Permutation",
    "build_chain",
    "compose",
    "conjugate",
    "contains",
    "element_order",
    "group_order",
    "inverse",
    "point_stabilizer",
    "pointwise_stabilizer",
    "random_element",
]
