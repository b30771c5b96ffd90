"""Single-entry corruptions of the shipped fixture files."""

import copy

from skewbrace.fixtures import AbelianGroup


def entry_paths(record: dict) -> list[tuple[str, ...]]:
    paths = [("delta_table", w) for w in record.get("delta_table", {})]
    for g, images in record["actor"]["action"].items():
        paths += [("actor", "action", g, x) for x in images]
    paths += [("complement", g) for g in record["complement"]]
    return paths


def corrupt(record: dict, path: tuple[str, ...]) -> dict:
    """Replace one table entry by a different element (old value plus the first generator)."""
    add = record["additive"]
    group = AbelianGroup(add["generators"], add["orders"])
    out = copy.deepcopy(record)
    node = out
    for key in path[:-1]:
        node = node[key]
    old = group.parse(node[path[-1]])
    new = group.table[old][group.parse(add["generators"][0])]
    node[path[-1]] = group.label(new)
    return out
