"""Reading and writing group files.

A group file holds one JSON object::

    {"name": "S4", "degree": 4, "generators": [[1, 0, 2, 3], "(0 1 2 3)"]}

Generators are image lists or cycle strings; cycle strings are normalised to
image lists on load.  The string ``fixture:NAME`` loads a built-in group.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import fixtures
from .group import Group
from .perm import Permutation, parse_cycles


class GroupFileError(ValueError):
    pass


def group_from_json(doc: dict) -> Group:
    if not isinstance(doc, dict):
        raise GroupFileError("group file must hold a JSON object")
    try:
        degree = doc["degree"]
        raw = doc["generators"]
    except KeyError as e:
        raise GroupFileError(f"missing field {e.args[0]!r}") from None
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 0:
        raise GroupFileError(f"degree must be a non-negative integer, got {degree!r}")
    if not isinstance(raw, list):
        raise GroupFileError("generators must be a list")
    gens = []
    for i, s in enumerate(raw):
        try:
            if isinstance(s, str):
                p = parse_cycles(s, degree)
            elif isinstance(s, list) and all(isinstance(a, int) for a in s):
                p = Permutation(s)
            else:
                raise ValueError("expected an image list or a cycle string")
        except ValueError as e:
            raise GroupFileError(f"generators[{i}]: {e}") from None
        if p.degree != degree:
            raise GroupFileError(f"generators[{i}]: degree {p.degree} != {degree}")
        gens.append(p)
    return Group(gens, degree=degree, label=doc.get("name"))


def group_to_json(g: Group) -> dict:
    return {
        "name": g.label or "",
        "degree": g.degree,
        "generators": [list(p.images) for p in g.generators],
    }


def load_group(source: str | Path) -> Group:
    """Load a group file, or a built-in group given as ``fixture:NAME``."""
    text = str(source)
    if text.startswith("fixture:"):
        return fixtures.load(text[len("fixture:"):])
    try:
        doc = json.loads(Path(source).read_text())
    except json.JSONDecodeError as e:
        raise GroupFileError(f"{source}: invalid JSON ({e})") from None
    return group_from_json(doc)


def save_group(g: Group, path: str | Path) -> None:
    Path(path).write_text(json.dumps(group_to_json(g)) + "\n")
