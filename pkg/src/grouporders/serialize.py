"""Versioned JSON encodings for elements, windows, orders, constraint
systems, and certificates.

Element encoding: {"group": "zn"|"heis"|"sl3", "data": [ints]} with 3x3
matrices flattened row-major.  Windows serialize their elements in index
order.  Total orders serialize compactly as "perm" (window indices listed
from smallest to largest); partial relations serialize as "pairs".  All
dumps are canonical (sorted keys, fixed separators), so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import json
from typing import Any

from .constraints import ConstraintSystem, SemigroupSpec
from .engine import Certificate, TraceStep
from .groups import (
    GroupElement,
    GroupId,
    HEISENBERG,
    KIND_HEISENBERG,
    KIND_SL3,
    KIND_ZN,
    SL3Z,
    Window,
    make_element,
    zn,
)
from .orders import OrderMatrix, is_total

FORMAT_VERSION = 1


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def group_to_json(group: GroupId) -> dict:
    if group.kind == KIND_ZN:
        return {"kind": "zn", "n": group.n}
    return {"kind": group.kind}


def group_from_json(obj) -> GroupId:
    if isinstance(obj, str):
        kind, n = obj, 0
    else:
        kind, n = obj["kind"], obj.get("n", 0)
    if kind == "zn":
        return zn(n)
    if kind == KIND_HEISENBERG:
        return HEISENBERG
    if kind == KIND_SL3:
        return SL3Z
    raise ValueError(f"unknown group {obj!r}")


def element_to_json(g: GroupElement) -> dict:
    return {"group": g.group.kind, "data": list(g.payload)}


def element_from_json(obj) -> GroupElement:
    kind = obj["group"]
    data = obj["data"]
    if kind == "zn":
        group = zn(len(data))
    elif kind == KIND_HEISENBERG:
        group = HEISENBERG
    elif kind == KIND_SL3:
        group = SL3Z
    else:
        raise ValueError(f"unknown group tag {kind!r}")
    return make_element(group, data)


def window_to_json(w: Window) -> dict:
    return {
        "format": FORMAT_VERSION,
        "group": group_to_json(w.group),
        "elements": [list(g.payload) for g in w],
    }


def window_from_json(obj) -> Window:
    group = group_from_json(obj["group"])
    return Window(group, [make_element(group, data) for data in obj["elements"]])


def element_set_from_json(obj) -> list[GroupElement]:
    """Element-list files share the window schema without the identity
    requirement."""
    group = group_from_json(obj["group"])
    return [make_element(group, data) for data in obj["elements"]]


def element_set_to_json(group: GroupId, elements) -> dict:
    return {
        "format": FORMAT_VERSION,
        "group": group_to_json(group),
        "elements": [list(g.payload) for g in elements],
    }


def order_to_json(m: OrderMatrix, include_window: bool = True) -> dict:
    out: dict[str, Any] = {"format": FORMAT_VERSION, "closed": m.closed}
    if include_window:
        out["window"] = window_to_json(m.window)
    if m.closed and is_total(m):
        ranks = m.ranks()
        perm = sorted(range(m.n), key=ranks.__getitem__)
        out["perm"] = perm
    else:
        out["pairs"] = sorted(m.pairs())
    return out


def order_from_json(obj, window: Window | None = None) -> OrderMatrix:
    if window is None:
        window = window_from_json(obj["window"])
    if "perm" in obj:
        perm = obj["perm"]
        ranks = [0] * len(perm)
        for r, i in enumerate(perm):
            ranks[i] = r
        return OrderMatrix.from_ranks(window, ranks)
    return OrderMatrix.from_pairs(
        window, [tuple(p) for p in obj["pairs"]], closed=bool(obj.get("closed"))
    )


def semigroup_to_json(s: SemigroupSpec) -> dict:
    return {
        "format": FORMAT_VERSION,
        "group": group_to_json(s.group),
        "positive": [list(g.payload) for g in s.positive_generators],
    }


def semigroup_from_json(obj) -> SemigroupSpec:
    group = group_from_json(obj["group"])
    return SemigroupSpec(
        group, tuple(make_element(group, d) for d in obj["positive"])
    )


def system_to_json(cs: ConstraintSystem) -> dict:
    return {
        "format": FORMAT_VERSION,
        "window": window_to_json(cs.window),
        "atoms": [list(a) for a in cs.atoms],
        "convention": cs.convention,
    }


def system_from_json(obj) -> ConstraintSystem:
    window = window_from_json(obj["window"])
    atoms = tuple(tuple(a) for a in obj["atoms"])
    return ConstraintSystem(window, atoms, obj.get("convention", "inverse_left"))


def _rule_to_json(rule: tuple):
    if rule[0] == "atom":
        return {"atom": rule[1]}
    return {"trans": [rule[1], rule[2], rule[3]]}


def _rule_from_json(obj) -> tuple:
    if "atom" in obj:
        return ("atom", obj["atom"])
    u, v, w = obj["trans"]
    return ("trans", u, v, w)


def certificate_to_json(cert: Certificate, window: Window | None = None) -> dict:
    out: dict[str, Any] = {"format": FORMAT_VERSION, "verdict": cert.verdict}
    if cert.witness is not None:
        out["witness"] = order_to_json(cert.witness, include_window=window is None)
    else:
        out["witness"] = None
    out["trace"] = [
        {"pair": list(step.pair), "rule": _rule_to_json(step.rule)}
        for step in cert.trace
    ]
    out["cycle"] = list(cert.cycle)
    return out


def certificate_from_json(obj, window: Window) -> Certificate:
    witness = None
    if obj.get("witness") is not None:
        witness = order_from_json(obj["witness"], window=window)
    trace = tuple(
        TraceStep(tuple(step["pair"]), _rule_from_json(step["rule"]))
        for step in obj["trace"]
    )
    return Certificate(obj["verdict"], witness, trace, tuple(obj["cycle"]))
