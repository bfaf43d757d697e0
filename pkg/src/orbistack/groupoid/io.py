"""JSON interchange for finite actions and action morphisms.

Action file::

    {"objects": [ids], "group": {"order": k, "table": [[...]]},
     "action": [[object id of g·x for x in objects] for g in 0..k-1],
     "adjacency": [[id, id], ...]}          # optional

Morphism file::

    {"lambda": [h for g in 0..k-1], "phi": [codomain id for x in objects]}
"""

from __future__ import annotations

import json
from pathlib import Path

from orbistack.groupoid.core import ActionMorphism, FiniteAction
from orbistack.groupoid.group import FiniteGroup


class FormatError(ValueError):
    pass


def _require(doc: dict, key: str, kind=list):
    if key not in doc:
        raise FormatError(f"missing key {key!r}")
    if not isinstance(doc[key], kind):
        raise FormatError(f"{key!r} must be a {kind.__name__}")
    return doc[key]


def action_from_dict(doc: dict) -> FiniteAction:
    if not isinstance(doc, dict):
        raise FormatError("an action document must be a JSON object")
    objects = _require(doc, "objects")
    group = _require(doc, "group", dict)
    table = _require(group, "table")
    if group.get("order", len(table)) != len(table):
        raise FormatError("group order does not match the table")
    index = {}
    for i, o in enumerate(objects):
        if not isinstance(o, (int, str)) or isinstance(o, bool):
            raise FormatError(f"object id {o!r} must be an int or a string")
        if o in index:
            raise FormatError(f"duplicate object id {o!r}")
        index[o] = i
    rows = _require(doc, "action")
    try:
        act_table = [[index[y] for y in row] for row in rows]
        adjacency = None
        if doc.get("adjacency") is not None:
            adjacency = [(index[a], index[b]) for a, b in doc["adjacency"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"unknown object id in action or adjacency: {exc}") from None
    try:
        g = FiniteGroup(table)
        return FiniteAction(g, act_table, labels=objects, adjacency=adjacency)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def action_to_dict(act: FiniteAction) -> dict:
    labels = list(act.labels)
    doc = {
        "objects": labels,
        "group": {"order": act.group.order, "table": [list(r) for r in act.group.table]},
        "action": [[labels[y] for y in row] for row in act.table],
    }
    if act.adjacency is not None:
        doc["adjacency"] = [[labels[x], labels[y]] for x, y in sorted(act.adjacency)]
    return doc


def morphism_from_dict(doc: dict, domain: FiniteAction, codomain: FiniteAction) -> ActionMorphism:
    if not isinstance(doc, dict):
        raise FormatError("a morphism document must be a JSON object")
    lam = _require(doc, "lambda")
    phi = _require(doc, "phi")
    index = {o: i for i, o in enumerate(codomain.labels)}
    try:
        phi_idx = tuple(index[y] for y in phi)
    except (KeyError, TypeError):
        raise FormatError("phi mentions an object missing from the codomain") from None
    if any(not isinstance(h, int) or isinstance(h, bool) for h in lam):
        raise FormatError("lambda entries must be integers")
    return ActionMorphism(domain, codomain, tuple(lam), phi_idx)


def morphism_to_dict(mor: ActionMorphism) -> dict:
    return {"lambda": list(mor.lam), "phi": [mor.codomain.labels[y] for y in mor.phi]}


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None
