"""Deterministic JSON renderings of engine values for CLI output.

Every payload carries a "schema" tag so downstream tooling can detect
format changes.  Rendering is one-way: the textual .lfoc format is the
input surface, JSON is the output surface.
"""

from __future__ import annotations

import json

from .category import CatObject, FinSet, Morphism, PushoutResult
from .expr import And, Atomic, Bot, CondExists, CondForall, Expr, Not, Or, Top
from .footprint import Footprint, Structure
from .rules import SketchRule
from .sketch import Constraint, Interpretation, Sketch

SCHEMA = "lfoc/1"


def object_json(obj: CatObject) -> dict:
    if isinstance(obj, FinSet):
        return {"kind": "set", "elements": list(obj.elements)}
    return {"kind": "graph", "vertices": list(obj.vertices),
            "edges": [list(t) for t in obj.edge_triples()]}


def morphism_json(m: Morphism, embed_objects: bool = True) -> dict:
    out: dict = {"map": m.name_map()}
    if embed_objects:
        out["dom"] = object_json(m.dom)
        out["cod"] = object_json(m.cod)
    return out


def expr_json(e: Expr) -> dict:
    if isinstance(e, Top):
        return {"node": "top"}
    if isinstance(e, Bot):
        return {"node": "bot"}
    if isinstance(e, Atomic):
        return {"node": "atomic", "feature": e.feature,
                "binding": morphism_json(e.binding, embed_objects=False)}
    if isinstance(e, And):
        return {"node": "and", "left": expr_json(e.left), "right": expr_json(e.right)}
    if isinstance(e, Or):
        return {"node": "or", "left": expr_json(e.left), "right": expr_json(e.right)}
    if isinstance(e, Not):
        return {"node": "not", "body": expr_json(e.body)}
    if isinstance(e, (CondExists, CondForall)):
        return {"node": "exists" if isinstance(e, CondExists) else "forall",
                "premise": expr_json(e.premise),
                "var": morphism_json(e.var),
                "body": expr_json(e.body)}
    raise TypeError(f"not an expression node: {e!r}")


def constraint_json(c: Constraint) -> dict:
    return {"expr": expr_json(c.expr),
            "binding": morphism_json(c.binding, embed_objects=False)}


def sketch_json(sk: Sketch) -> dict:
    return {"context": object_json(sk.context),
            "constraints": [constraint_json(c) for c in sk.sorted_constraints()]}


def footprint_json(fp: Footprint) -> dict:
    return {"kind": fp.kind,
            "features": {name: object_json(arity) for name, arity in fp.features.items()}}


def structure_json(st: Structure) -> dict:
    return {"name": st.name,
            "carrier": object_json(st.carrier),
            "interpretation": {
                fname: [m.name_map() for m in st.interp(fname)]
                for fname in st.footprint.features}}


def interpretation_json(i: Interpretation) -> dict:
    return {"structure": i.structure.name,
            "map": i.map.name_map()}


def rule_json(rule: SketchRule) -> dict:
    return {"name": rule.name,
            "lhs": sketch_json(rule.lhs),
            "rhs": sketch_json(rule.rhs),
            "morphism": morphism_json(rule.morphism, embed_objects=False)}


def pushout_json(po: PushoutResult) -> dict:
    return {"apex": object_json(po.apex),
            "inj_left": morphism_json(po.inj_left, embed_objects=False),
            "inj_right": morphism_json(po.inj_right, embed_objects=False)}


def payload(**fields) -> dict:
    return {"schema": SCHEMA, **fields}


def dump(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
