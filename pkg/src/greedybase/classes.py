"""Conjugacy classes of prime-order elements, and class-size/fusion data files."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from sympy import isprime

from .chain import _inv, _mul
from .conjugacy import are_conjugate, centralizer_order
from .group import Group
from .perm import Permutation, element_order

ENUMERATION_CAP = 10**7
CLASS_BUDGET = 10**7


class ClassBudgetExceeded(RuntimeError):
    pass


class ClassDataError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class ConjClass:
    name: str
    element_order: int
    size: int
    representative: Permutation | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "element_order": self.element_order, "size": str(self.size)}


@dataclass
class PrimeClasses:
    """Prime-order classes of a group.

    ``certified`` is True only when the list is provably complete: either
    every element was enumerated, or the classes found (of all orders) add
    up to the group order.
    """

    classes: list[ConjClass]
    certified: bool
    mode: str
    group_order: int

    def __iter__(self) -> Iterator[ConjClass]:
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i: int) -> ConjClass:
        return self.classes[i]


def class_elements(g: Group, x: Permutation, budget: int = CLASS_BUDGET) -> set[tuple]:
    """All conjugates of ``x`` in ``g``, as image tuples (closure under generator conjugation)."""
    gens = [(s.images, _inv(s.images)) for s in g.generators]
    start = x.images
    seen = {start}
    stack = [start]
    while stack:
        y = stack.pop()
        for s, si in gens:
            z = _mul(_mul(si, y), s)
            if z not in seen:
                seen.add(z)
                if len(seen) > budget:
                    raise ClassBudgetExceeded(f"class exceeds {budget} elements")
                stack.append(z)
    return seen


def conjugacy_class(g: Group, x: Permutation, budget: int = CLASS_BUDGET) -> ConjClass:
    if x not in g:
        raise ValueError("element not in group")
    size = len(class_elements(g, x, budget))
    return ConjClass(f"{element_order(x)}?", element_order(x), size, x)


def _name_classes(found: list[tuple[Permutation, int]]) -> list[ConjClass]:
    """ATLAS-style names: order then a letter, by increasing class size."""
    rows = sorted(
        ((element_order(x), size, x.images, x) for x, size in found),
        key=lambda r: r[:3],
    )
    letters: Counter = Counter()
    out = []
    for order, size, _, x in rows:
        letter = _letter(letters[order])
        letters[order] += 1
        out.append(ConjClass(f"{order}{letter}", order, size, x))
    return out


def _letter(k: int) -> str:
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(ord("A") + r) + s
    return s


def _exhaustive(g: Group, cap: int, budget: int) -> list[tuple[Permutation, int]]:
    if g.order > cap:
        raise ClassBudgetExceeded(f"group order {g.order} exceeds enumeration cap {cap}")
    covered: set[tuple] = set()
    found = []
    for images in g.chain.iter_images():
        if images in covered:
            continue
        x = Permutation(images, check=False)
        if not isprime(element_order(x)):
            continue
        elems = class_elements(g, x, budget)
        covered |= elems
        found.append((x, len(elems)))
    return found


def _census(
    g: Group, rng: random.Random, max_samples: int, per_type: int = 64
) -> tuple[list[tuple[Permutation, int]], bool]:
    """Random search for all classes until the class sizes add up to |G|.

    Each new class gets its exact size from the centraliser order.  Samples
    whose cycle type already has ``per_type`` conjugacy tests behind it are
    skipped until progress stalls, then the allowance doubles.
    """
    order = g.order
    ident = Permutation.identity(g.degree)
    found = [(ident, 1)]
    by_type: dict[tuple, list[Permutation]] = {ident.cycle_type(): [ident]}
    tested: Counter = Counter()
    total = 1
    stall = 0
    for _ in range(max_samples):
        if total == order:
            return found, True
        x = Permutation(g.chain.random_images(rng), check=False)
        ct = x.cycle_type()
        known = by_type.setdefault(ct, [])
        stall += 1
        if stall > 100 * per_type:
            per_type *= 2
            stall = 0
        if known and tested[ct] >= per_type:
            continue
        tested[ct] += 1
        if any(are_conjugate(g, rep, x) for rep in known):
            continue
        size = order // centralizer_order(g, x)
        known.append(x)
        found.append((x, size))
        total += size
        stall = 0
    if total > order:
        raise RuntimeError("class sizes exceed the group order")
    return found, total == order


def prime_order_class_reps(
    g: Group,
    mode: str = "auto",
    rng: random.Random | None = None,
    stall: int = 1000,
    cap: int = ENUMERATION_CAP,
    budget: int = CLASS_BUDGET,
    max_samples: int = 10**6,
) -> PrimeClasses:
    """Classes of elements of prime order.

    Modes:

    ``exhaustive``
        enumerate the group (order at most ``cap``); certified.
    ``census``
        random sampling of all classes with exact sizes from centraliser
        orders; certified when the class equation closes.
    ``randomized``
        random sampling stopped after ``stall`` consecutive samples without a
        new class; never certified.
    ``auto``
        exhaustive up to order 10**5, census above.
    """
    if mode == "auto":
        mode = "exhaustive" if g.order <= 10**5 else "census"
    rng = rng or random.Random(0)
    if mode == "exhaustive":
        found, certified = _exhaustive(g, cap, budget), True
    elif mode == "census":
        found, certified = _census(g, rng, max_samples)
    elif mode == "randomized":
        found, certified = _randomized(g, rng, stall), False
    else:
        raise ValueError(f"unknown mode {mode!r}")
    prime = [(x, s) for x, s in found if isprime(element_order(x))]
    return PrimeClasses(_name_classes(prime), certified, mode, g.order)


def _randomized(g: Group, rng: random.Random, stall: int) -> list[tuple[Permutation, int]]:
    found: list[tuple[Permutation, int]] = []
    quiet = 0
    while quiet < stall:
        x = Permutation(g.chain.random_images(rng), check=False)
        quiet += 1
        if not isprime(element_order(x)):
            continue
        if any(are_conjugate(g, rep, x) for rep, _ in found):
            continue
        found.append((x, g.order // centralizer_order(g, x)))
        quiet = 0
    return found


# -- class data -----------------------------------------------------------


@dataclass
class ClassData:
    group_order: int
    group_classes: list[ConjClass]
    subgroup_order: int | None = None
    subgroup_classes: list[ConjClass] | None = None
    fusion: list[int] | None = None
    complete: bool = False
    group_name: str = "G"
    subgroup_name: str = "H"

    def validate(self) -> ClassData:
        for i, c in enumerate(self.group_classes):
            _check_class(c, self.group_order, f"group.classes[{i}]")
        if self.subgroup_classes is not None:
            if self.subgroup_order is None:
                raise ClassDataError("subgroup.order", "missing")
            if self.group_order % self.subgroup_order:
                raise ClassDataError("subgroup.order", "does not divide the group order")
            for i, c in enumerate(self.subgroup_classes):
                _check_class(c, self.subgroup_order, f"subgroup.classes[{i}]")
        if self.fusion is not None:
            if self.subgroup_classes is None:
                raise ClassDataError("fusion", "given without subgroup classes")
            if len(self.fusion) != len(self.subgroup_classes):
                raise ClassDataError("fusion", "length differs from the subgroup class list")
            fused = Counter()
            for i, j in enumerate(self.fusion):
                if not 0 <= j < len(self.group_classes):
                    raise ClassDataError(f"fusion[{i}]", f"index {j} out of range")
                hc, gc = self.subgroup_classes[i], self.group_classes[j]
                if hc.element_order != gc.element_order:
                    raise ClassDataError(
                        f"fusion[{i}]",
                        f"{hc.name} (order {hc.element_order}) fused to "
                        f"{gc.name} (order {gc.element_order})",
                    )
                fused[j] += hc.size
            for j, total in fused.items():
                if total > self.group_classes[j].size:
                    raise ClassDataError(
                        f"fusion->{self.group_classes[j].name}",
                        f"fused subgroup classes total {total} > class size",
                    )
        return self

    @property
    def index(self) -> int:
        if self.subgroup_order is None:
            raise ClassDataError("subgroup.order", "missing")
        return self.group_order // self.subgroup_order

    def to_json(self) -> dict:
        out = {
            "version": 1,
            "group": _block(self.group_name, self.group_order, self.group_classes),
            "complete": self.complete,
        }
        if self.subgroup_classes is not None:
            out["subgroup"] = _block(self.subgroup_name, self.subgroup_order, self.subgroup_classes)
        if self.fusion is not None:
            out["fusion"] = list(self.fusion)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _block(name: str, order: int, classes: list[ConjClass]) -> dict:
    return {"name": name, "order": str(order), "classes": [c.to_json() for c in classes]}


def _check_class(c: ConjClass, order: int, where: str) -> None:
    if c.size < 1 or order % c.size:
        raise ClassDataError(f"{where}.size", f"{c.size} does not divide group order {order}")
    if c.element_order < 1:
        raise ClassDataError(f"{where}.element_order", "must be positive")


def _parse_int(value, where: str) -> int:
    if isinstance(value, bool):
        raise ClassDataError(where, "expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("-").isdigit():
        return int(value)
    raise ClassDataError(where, f"expected a decimal integer, got {value!r}")


def _parse_block(doc: dict, where: str) -> tuple[str, int, list[ConjClass]]:
    if not isinstance(doc, dict):
        raise ClassDataError(where, "expected an object")
    try:
        raw_classes = doc["classes"]
        order = _parse_int(doc["order"], f"{where}.order")
    except KeyError as e:
        raise ClassDataError(f"{where}.{e.args[0]}", "missing") from None
    classes = []
    for i, c in enumerate(raw_classes):
        w = f"{where}.classes[{i}]"
        try:
            classes.append(
                ConjClass(
                    str(c.get("name", f"c{i}")),
                    _parse_int(c["element_order"], f"{w}.element_order"),
                    _parse_int(c["size"], f"{w}.size"),
                )
            )
        except (KeyError, AttributeError):
            raise ClassDataError(w, "needs element_order and size") from None
    return str(doc.get("name", where)), order, classes


def load_class_data(source: str | Path | dict) -> ClassData:
    """Parse and validate a class-data document (JSON text, a path, or a dict)."""
    if isinstance(source, Path):
        source = source.read_text()
    if isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as e:
            raise ClassDataError("document", f"invalid JSON: {e}") from None
    else:
        doc = source
    if not isinstance(doc, dict):
        raise ClassDataError("document", "expected a JSON object")
    if doc.get("version") != 1:
        raise ClassDataError("version", f"unsupported version {doc.get('version')!r}")
    if "group" not in doc:
        raise ClassDataError("group", "missing")
    gname, gorder, gclasses = _parse_block(doc["group"], "group")
    data = ClassData(gorder, gclasses, group_name=gname)
    if "subgroup" in doc:
        data.subgroup_name, data.subgroup_order, data.subgroup_classes = _parse_block(
            doc["subgroup"], "subgroup"
        )
    if "fusion" in doc:
        fusion = doc["fusion"]
        if not isinstance(fusion, list):
            raise ClassDataError("fusion", "expected a list")
        data.fusion = [_parse_int(j, f"fusion[{i}]") for i, j in enumerate(fusion)]
    complete = doc.get("complete", False)
    if not isinstance(complete, bool):
        raise ClassDataError("complete", "expected true or false")
    data.complete = complete
    return data.validate()


def fused_intersection_size(d: ClassData, group_class: int) -> int:
    """|x^G ∩ H| as the total size of the subgroup classes fusing into the class."""
    if d.fusion is None or d.subgroup_classes is None:
        raise ClassDataError("fusion", "missing")
    return sum(c.size for c, j in zip(d.subgroup_classes, d.fusion) if j == group_class)


def live_intersection_size(
    g: Group, h: Group, cls: ConjClass, budget: int = CLASS_BUDGET
) -> int:
    """|x^G ∩ H| by enumerating the class and testing membership in h."""
    if cls.representative is None:
        raise ValueError("class has no representative")
    return sum(
        1 for y in class_elements(g, cls.representative, budget) if h.chain.contains_images(y)
    )


def fuse(g: Group, h_classes: list[ConjClass], g_classes: list[ConjClass]) -> list[int]:
    """Index of the g-class containing each h-class representative."""
    out = []
    for hc in h_classes:
        x = hc.representative
        match = [
            j
            for j, gc in enumerate(g_classes)
            if gc.element_order == hc.element_order
            and gc.representative.cycle_type() == x.cycle_type()
        ]
        if len(match) > 1:
            match = [j for j in match if are_conjugate(g, g_classes[j].representative, x)]
        if len(match) != 1:
            raise RuntimeError(f"could not fuse subgroup class {hc.name}")
        out.append(match[0])
    return out


def class_data_from_groups(
    g: Group,
    h: Group,
    mode: str = "auto",
    rng: random.Random | None = None,
) -> ClassData:
    """Prime-order class data of g and a subgroup h, with fusion, computed live."""
    rng = rng or random.Random(0)
    gc = prime_order_class_reps(g, mode, rng)
    hc = prime_order_class_reps(h, mode, rng)
    data = ClassData(
        group_order=g.order,
        group_classes=list(gc),
        subgroup_order=h.order,
        subgroup_classes=list(hc),
        fusion=fuse(g, list(hc), list(gc)),
        complete=gc.certified and hc.certified,
        group_name=g.label or "G",
        subgroup_name=h.label or "H",
    )
    return data.validate()
