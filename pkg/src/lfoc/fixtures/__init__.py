"""Built-in example corpora.

Each corpus exists twice: as a .lfoc file next to this module and as
programmatic builders below.  The two are kept structurally identical
(the test suite cross-validates them), so the files document the
textual format and the builders serve as library entry points.
"""

from __future__ import annotations

from pathlib import Path

from ..category import FinGraph, FinSet, identity, inclusion, morphism
from ..dsl import Document, parse_path
from ..expr import Expr, atom, conj, exists_along, forall_along, implies, substitute
from ..footprint import Footprint, Structure
from ..rules import SketchRule
from ..sketch import Constraint, Sketch

FIXTURES = ("fol", "cat", "alc", "ua")


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}, expected one of {FIXTURES}")
    return Path(__file__).resolve().parent / f"{name}.lfoc"


def load_fixture(name: str) -> Document:
    return parse_path(fixture_path(name))


# ---------------------------------------------------------------------------
# FOL: unary male/female and binary parent over a four-person family

P1 = FinSet(("p",))
P2 = FinSet(("q1", "q2"))
X4 = FinSet(("x1", "x2", "x3", "x4"))
FAMILY = FinSet(("alice", "bob", "carol", "dave"))


def fol_footprint() -> Footprint:
    return Footprint("FOL", "set", {"male": P1, "female": P1, "parent": P2})


def sibling_expr() -> Expr:
    """x1 has a sibling x2 via a shared mother x3 and father x4."""
    def parent(q1: str, q2: str) -> Expr:
        return atom("parent", morphism(P2, X4, {"q1": q1, "q2": q2}))

    body = conj(atom("female", morphism(P1, X4, {"p": "x3"})),
                atom("male", morphism(P1, X4, {"p": "x4"})))
    for pair in (("x3", "x1"), ("x4", "x1"), ("x3", "x2"), ("x4", "x2")):
        body = conj(body, parent(*pair))
    return exists_along(morphism(P1, X4, {"p": "x1"}), body)


def daughters_only_expr() -> Expr:
    """Every recorded child of p is female."""
    premise = atom("parent", identity(P2))
    conclusion = atom("female", morphism(P1, P2, {"p": "q2"}))
    return forall_along(morphism(P1, P2, {"p": "q1"}), implies(premise, conclusion))


def smith_family() -> Structure:
    fp = fol_footprint()

    def pick(who: str):
        return morphism(P1, FAMILY, {"p": who})

    def pair(a: str, b: str):
        return morphism(P2, FAMILY, {"q1": a, "q2": b})

    return Structure("Smiths", fp, FAMILY, {
        "male": [pick("bob"), pick("dave")],
        "female": [pick("alice"), pick("carol")],
        "parent": [pair("carol", "alice"), pair("carol", "bob"),
                   pair("dave", "alice"), pair("dave", "bob")],
    })


# ---------------------------------------------------------------------------
# CAT: identity loops and composition triangles on graphs

PV = FinGraph(("pv",), ())
ID_ARITY = FinGraph(("pv",), (("pe", "pv", "pv"),))
TWO_LOOPS = FinGraph(("pv",), (("pe1", "pv", "pv"), ("pe2", "pv", "pv")))
COMP_ARITY = FinGraph(
    ("pv1", "pv2", "pv3"),
    (("pe1", "pv1", "pv2"), ("pe2", "pv2", "pv3"), ("pe3", "pv1", "pv3")))


def cat_footprint() -> Footprint:
    return Footprint("CAT", "graph", {"ident": ID_ARITY, "comp": COMP_ARITY})


def identity_existence_rule() -> SketchRule:
    """Every vertex carries an identity loop."""
    lhs = Sketch("AnyVertex", PV)
    rhs = Sketch("WithIdLoop", ID_ARITY,
                 [Constraint(atom("ident", identity(ID_ARITY)), identity(ID_ARITY))])
    return SketchRule("id_exists", lhs, rhs, morphism(PV, ID_ARITY, {"pv": "pv"}))


def identity_uniqueness_rule() -> SketchRule:
    """Two identity loops on one vertex collapse to one."""
    two_ids = conj(
        atom("ident", morphism(ID_ARITY, TWO_LOOPS, {"pv": "pv", "pe": "pe1"})),
        atom("ident", morphism(ID_ARITY, TWO_LOOPS, {"pv": "pv", "pe": "pe2"})))
    lhs = Sketch("TwoIdLoops", TWO_LOOPS, [Constraint(two_ids, identity(TWO_LOOPS))])
    rhs = Sketch("OneLoop", ID_ARITY)
    glue = morphism(TWO_LOOPS, ID_ARITY, {"pv": "pv", "pe1": "pe", "pe2": "pe"})
    return SketchRule("id_unique", lhs, rhs, glue)


def one_object_structure() -> Structure:
    """The one-vertex one-loop world where the loop is the identity."""
    collapse = morphism(COMP_ARITY, ID_ARITY, {
        "pv1": "pv", "pv2": "pv", "pv3": "pv",
        "pe1": "pe", "pe2": "pe", "pe3": "pe"})
    return Structure("OneObj", cat_footprint(), ID_ARITY,
                     {"ident": [identity(ID_ARITY)], "comp": [collapse]})


# ---------------------------------------------------------------------------
# ALC: concepts as unary features, roles as binary features

C1 = FinSet(("x1",))
C2 = FinSet(("x1", "x2"))
ROLE_SHIFT = morphism(C1, C2, {"x1": "x2"})


def alc_footprint(concepts: tuple[str, ...] = ("Person", "Happy"),
                  roles: tuple[str, ...] = ("hasChild",)) -> Footprint:
    features: dict = {name: C1 for name in concepts}
    features.update({name: C2 for name in roles})
    return Footprint("ALC", "set", features)


def concept(name: str) -> Expr:
    return atom(name, identity(C1))


def role_atom(name: str) -> Expr:
    return atom(name, identity(C2))


def exists_restriction(role: str, c: Expr) -> Expr:
    """exists role . c  as a quantified expression over {x1} -> {x1, x2}."""
    body = conj(role_atom(role), substitute(c, ROLE_SHIFT))
    return exists_along(inclusion(C1, C2), body)


def forall_restriction(role: str, c: Expr) -> Expr:
    """forall role . c  (value restriction)."""
    body = implies(role_atom(role), substitute(c, ROLE_SHIFT))
    return forall_along(inclusion(C1, C2), body)


def gci_rule(name: str, left: Expr, right: Expr) -> SketchRule:
    """A concept inclusion as an identity rule between one-constraint
    sketches on the concept arity."""
    lhs = Sketch(f"{name}_lhs", C1, [Constraint(left, identity(C1))])
    rhs = Sketch(f"{name}_rhs", C1, [Constraint(right, identity(C1))])
    return SketchRule(name, lhs, rhs, identity(C1))


ALC_DOM = FinSet(("ann", "ben", "cara"))


def alc_world() -> Structure:
    def pick(who: str):
        return morphism(C1, ALC_DOM, {"x1": who})

    def link(a: str, b: str):
        return morphism(C2, ALC_DOM, {"x1": a, "x2": b})

    return Structure("World", alc_footprint(), ALC_DOM, {
        "Person": [pick("ann"), pick("ben"), pick("cara")],
        "Happy": [pick("cara")],
        "hasChild": [link("ann", "cara"), link("ben", "ben")],
    })


# ---------------------------------------------------------------------------
# UA: marked terminal vertices and product spans on graphs

ZERO_G = FinGraph((), ())
ONE_G = FinGraph(("pv",), ())
PAIR_G = FinGraph(("pv", "pv1", "pv2"), ())
SPAN_G = FinGraph(("pv", "pv1", "pv2"),
                  (("pr1", "pv", "pv1"), ("pr2", "pv", "pv2")))


def ua_footprint() -> Footprint:
    return Footprint("UA", "graph", {"final": ONE_G, "prod": SPAN_G})


def final_rule() -> SketchRule:
    lhs = Sketch("Nothing", ZERO_G)
    rhs = Sketch("FinalPt", ONE_G,
                 [Constraint(atom("final", identity(ONE_G)), identity(ONE_G))])
    return SketchRule("final_exists", lhs, rhs, morphism(ZERO_G, ONE_G, {}))


def product_rule() -> SketchRule:
    lhs = Sketch("AnyPair", PAIR_G)
    rhs = Sketch("ProdCone", SPAN_G,
                 [Constraint(atom("prod", identity(SPAN_G)), identity(SPAN_G))])
    return SketchRule("prod_exists", lhs, rhs, inclusion(PAIR_G, SPAN_G))


def cone_structure() -> Structure:
    return Structure("Cone", ua_footprint(), SPAN_G, {
        "final": [morphism(ONE_G, SPAN_G, {"pv": "pv1"}),
                  morphism(ONE_G, SPAN_G, {"pv": "pv2"})],
        "prod": [identity(SPAN_G)],
    })
