"""First-order feature expressions and their solution-set semantics.

Every expression carries an arity object X; over a structure U it
denotes the set of "solutions": those morphisms a: X -> carrier(U) it
holds of.  The eight constructors and their meaning:

* ``Atomic(P, delta)``  holds of a  iff  delta;a is listed under P.
* ``Top`` holds of every a, ``Bot`` of none.
* ``And`` / ``Or`` / ``Not``  are intersection, union, complement
  within hom(X, carrier).
* ``CondExists(premise, t, body)`` with t: X -> Y  holds of a  iff
  whenever a solves the premise, some extension b: Y -> carrier with
  t;b = a solves the body.
* ``CondForall(premise, t, body)``  holds of a  iff whenever a solves
  the premise, every extension of a along t solves the body.

Both quantifiers are guarded: a failing premise makes them hold.  With
no extensions at all, the conditional-forall holds and the
conditional-exists fails (given the premise).

Node constructors do not validate boundary agreement between children,
so ill-formed candidates can be built and then reported on by
`wf_check`; the lowercase helper functions (`conj`, `exists_along`,
...) do insist on well-formed input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .category import (
    CatObject,
    CategoryError,
    Morphism,
    canonical_copy,
    compose,
    hom_set,
    identity,
    inverse,
    pushout,
)
from .footprint import Footprint, Report, Structure


@dataclass(frozen=True)
class Expr:
    """Base class; every node carries its arity object."""

    arity: CatObject


@dataclass(frozen=True)
class Atomic(Expr):
    feature: str
    binding: Morphism  # arity(feature) -> arity


@dataclass(frozen=True)
class Top(Expr):
    pass


@dataclass(frozen=True)
class Bot(Expr):
    pass


@dataclass(frozen=True)
class And(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Or(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Not(Expr):
    body: Expr


@dataclass(frozen=True)
class CondExists(Expr):
    premise: Expr
    var: Morphism  # t: arity -> Y
    body: Expr     # at Y


@dataclass(frozen=True)
class CondForall(Expr):
    premise: Expr
    var: Morphism
    body: Expr


# -- helper constructors (validate eagerly) ---------------------------------

def atom(feature: str, binding: Morphism) -> Atomic:
    return Atomic(binding.cod, feature, binding)


def top(arity: CatObject) -> Top:
    return Top(arity)


def bot(arity: CatObject) -> Bot:
    return Bot(arity)


def conj(left: Expr, right: Expr) -> And:
    if left.arity != right.arity:
        raise CategoryError(f"conjunction of arities {left.arity!r} and {right.arity!r}")
    return And(left.arity, left, right)


def disj(left: Expr, right: Expr) -> Or:
    if left.arity != right.arity:
        raise CategoryError(f"disjunction of arities {left.arity!r} and {right.arity!r}")
    return Or(left.arity, left, right)


def neg(body: Expr) -> Not:
    return Not(body.arity, body)


def cond_exists(premise: Expr, var: Morphism, body: Expr) -> CondExists:
    if premise.arity != var.dom:
        raise CategoryError(f"premise arity {premise.arity!r} differs from {var.dom!r}")
    if body.arity != var.cod:
        raise CategoryError(f"body arity {body.arity!r} differs from {var.cod!r}")
    return CondExists(var.dom, premise, var, body)


def cond_forall(premise: Expr, var: Morphism, body: Expr) -> CondForall:
    if premise.arity != var.dom:
        raise CategoryError(f"premise arity {premise.arity!r} differs from {var.dom!r}")
    if body.arity != var.cod:
        raise CategoryError(f"body arity {body.arity!r} differs from {var.cod!r}")
    return CondForall(var.dom, premise, var, body)


def exists_along(var: Morphism, body: Expr) -> CondExists:
    return cond_exists(Top(var.dom), var, body)


def forall_along(var: Morphism, body: Expr) -> CondForall:
    return cond_forall(Top(var.dom), var, body)


def implies(premise: Expr, conclusion: Expr) -> CondForall:
    """Propositional implication: conditional quantification along the
    identity, where both quantifiers coincide."""
    if premise.arity != conclusion.arity:
        raise CategoryError(
            f"implication of arities {premise.arity!r} and {conclusion.arity!r}")
    return cond_forall(premise, identity(premise.arity), conclusion)


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (And, Or)):
        return (e.left, e.right)
    if isinstance(e, Not):
        return (e.body,)
    if isinstance(e, (CondExists, CondForall)):
        return (e.premise, e.body)
    return ()


def subexpressions(e: Expr) -> Iterator[Expr]:
    yield e
    for child in children(e):
        yield from subexpressions(child)


def depth(e: Expr) -> int:
    kids = children(e)
    return 1 + max((depth(k) for k in kids), default=0)


# ---------------------------------------------------------------------------
# Well-formedness

def wf_check(e: Expr, footprint: Footprint) -> Report:
    """Boundary and arity agreement of every node against a footprint."""
    problems: list[str] = []

    def walk(node: Expr, path: str) -> None:
        if node.arity.kind != footprint.kind:
            problems.append(f"{path}: arity {node.arity!r} is not a {footprint.kind}")
        if isinstance(node, Atomic):
            if node.feature not in footprint.features:
                problems.append(f"{path}: unknown feature {node.feature!r}")
            else:
                want = footprint.features[node.feature]
                if node.binding.dom != want:
                    problems.append(
                        f"{path}: binding starts at {node.binding.dom!r}, "
                        f"expected the arity {want!r} of {node.feature!r}")
            if node.binding.cod != node.arity:
                problems.append(
                    f"{path}: binding ends at {node.binding.cod!r}, "
                    f"expected the expression arity {node.arity!r}")
        elif isinstance(node, (And, Or)):
            for side, kid in (("left", node.left), ("right", node.right)):
                if kid.arity != node.arity:
                    problems.append(
                        f"{path}.{side}: arity {kid.arity!r} differs from {node.arity!r}")
                walk(kid, f"{path}.{side}")
        elif isinstance(node, Not):
            if node.body.arity != node.arity:
                problems.append(
                    f"{path}.body: arity {node.body.arity!r} differs from {node.arity!r}")
            walk(node.body, f"{path}.body")
        elif isinstance(node, (CondExists, CondForall)):
            if node.var.dom != node.arity:
                problems.append(
                    f"{path}: quantifier morphism starts at {node.var.dom!r}, "
                    f"expected {node.arity!r}")
            if node.premise.arity != node.arity:
                problems.append(
                    f"{path}.premise: arity {node.premise.arity!r} differs from {node.arity!r}")
            if node.body.arity != node.var.cod:
                problems.append(
                    f"{path}.body: arity {node.body.arity!r} differs from the "
                    f"quantifier target {node.var.cod!r}")
            walk(node.premise, f"{path}.premise")
            walk(node.body, f"{path}.body")

    walk(e, "expr")
    return Report(not problems, tuple(problems))


def is_constructive(e: Expr, *, strict: bool = False) -> bool:
    """No negation and no conditional-forall anywhere.

    With ``strict=True`` additionally every conditional-exists premise
    must be Top; solutions of strict expressions are preserved by
    post-composition with structure homomorphisms.
    """
    if isinstance(e, (Not, CondForall)):
        return False
    if isinstance(e, CondExists):
        if strict and not isinstance(e.premise, Top):
            return False
        return (is_constructive(e.premise, strict=strict)
                and is_constructive(e.body, strict=strict))
    return all(is_constructive(k, strict=strict) for k in children(e))


# ---------------------------------------------------------------------------
# Semantics

class _Evaluator:
    """Solution sets over one structure, memoized per sub-expression."""

    def __init__(self, structure: Structure):
        self.structure = structure
        self.memo: dict[Expr, frozenset] = {}

    def solutions(self, e: Expr) -> frozenset:
        out = self.memo.get(e)
        if out is None:
            out = self._compute(e)
            self.memo[e] = out
        return out

    def _compute(self, e: Expr) -> frozenset:
        carrier = self.structure.carrier
        hom = hom_set(e.arity, carrier)
        if isinstance(e, Atomic):
            listed = self.structure.interp_set(e.feature)
            return frozenset(a for a in hom if compose(e.binding, a) in listed)
        if isinstance(e, Top):
            return frozenset(hom)
        if isinstance(e, Bot):
            return frozenset()
        if isinstance(e, And):
            return self.solutions(e.left) & self.solutions(e.right)
        if isinstance(e, Or):
            return self.solutions(e.left) | self.solutions(e.right)
        if isinstance(e, Not):
            return frozenset(hom) - self.solutions(e.body)
        if isinstance(e, CondExists):
            premise = self.solutions(e.premise)
            witnessed = {compose(e.var, b) for b in self.solutions(e.body)}
            return frozenset(a for a in hom if a not in premise or a in witnessed)
        if isinstance(e, CondForall):
            premise = self.solutions(e.premise)
            body = self.solutions(e.body)
            # extensions of a along t are the b with t;b = a
            spoiled = {compose(e.var, b) for b in hom_set(e.var.cod, carrier)
                       if b not in body}
            return frozenset(a for a in hom if a not in premise or a not in spoiled)
        raise TypeError(f"not an expression node: {e!r}")


def solutions(e: Expr, structure: Structure) -> tuple[Morphism, ...]:
    """All solutions of `e` over the structure, in hom-set order."""
    if e.arity.kind != structure.carrier.kind:
        raise CategoryError(
            f"expression arity {e.arity!r} and carrier {structure.carrier!r} "
            f"have different kinds")
    sols = _Evaluator(structure).solutions(e)
    return tuple(a for a in hom_set(e.arity, structure.carrier) if a in sols)


def holds(a: Morphism, e: Expr, structure: Structure) -> bool:
    """Does the assignment a: arity -> carrier solve the expression?"""
    if a.dom != e.arity:
        raise CategoryError(
            f"assignment starts at {a.dom!r} but the expression arity is {e.arity!r}")
    if a.cod != structure.carrier:
        raise CategoryError(
            f"assignment ends at {a.cod!r} but the carrier is {structure.carrier!r}")
    return a in _Evaluator(structure).solutions(e)


# ---------------------------------------------------------------------------
# Substitution and canonical renaming

def substitute(e: Expr, t: Morphism) -> Expr:
    """Rebind the expression along t: arity(e) -> Z.

    Atomic bindings are post-composed; quantifier nodes push out their
    variable declaration against t, so the result quantifies over the
    chosen-pushout object with its canonical names.
    """
    if t.dom != e.arity:
        raise CategoryError(
            f"substitution along {t!r} starting at {t.dom!r}, "
            f"but the expression arity is {e.arity!r}")
    target = t.cod
    if isinstance(e, Atomic):
        return Atomic(target, e.feature, compose(e.binding, t))
    if isinstance(e, Top):
        return Top(target)
    if isinstance(e, Bot):
        return Bot(target)
    if isinstance(e, And):
        return And(target, substitute(e.left, t), substitute(e.right, t))
    if isinstance(e, Or):
        return Or(target, substitute(e.left, t), substitute(e.right, t))
    if isinstance(e, Not):
        return Not(target, substitute(e.body, t))
    if isinstance(e, (CondExists, CondForall)):
        po = pushout(e.var, t)
        new_var = po.inj_right          # Z -> apex
        body = substitute(e.body, po.inj_left)  # along Y -> apex
        premise = substitute(e.premise, t)
        node = CondExists if isinstance(e, CondExists) else CondForall
        return node(target, premise, new_var, body)
    raise TypeError(f"not an expression node: {e!r}")


def rename_expr(e: Expr, iso: Morphism) -> Expr:
    """Transport the expression along an isomorphism of its arity.

    Unlike `substitute` this leaves quantifier targets untouched, so the
    result has exactly the same shape.
    """
    if iso.dom != e.arity:
        raise CategoryError(f"renaming must start at the arity {e.arity!r}")
    target = iso.cod
    if isinstance(e, Atomic):
        return Atomic(target, e.feature, compose(e.binding, iso))
    if isinstance(e, Top):
        return Top(target)
    if isinstance(e, Bot):
        return Bot(target)
    if isinstance(e, And):
        return And(target, rename_expr(e.left, iso), rename_expr(e.right, iso))
    if isinstance(e, Or):
        return Or(target, rename_expr(e.left, iso), rename_expr(e.right, iso))
    if isinstance(e, Not):
        return Not(target, rename_expr(e.body, iso))
    if isinstance(e, (CondExists, CondForall)):
        node = CondExists if isinstance(e, CondExists) else CondForall
        return node(target, rename_expr(e.premise, iso),
                    compose(inverse(iso), e.var), e.body)
    raise TypeError(f"not an expression node: {e!r}")


def canonicalize(e: Expr) -> Expr:
    """Rename every quantifier target to positional names.

    Two expressions with the same arity are considered equal up to
    bound renaming exactly when their canonical forms are equal.
    """
    if isinstance(e, And):
        return And(e.arity, canonicalize(e.left), canonicalize(e.right))
    if isinstance(e, Or):
        return Or(e.arity, canonicalize(e.left), canonicalize(e.right))
    if isinstance(e, Not):
        return Not(e.arity, canonicalize(e.body))
    if isinstance(e, (CondExists, CondForall)):
        iso = canonical_copy(e.var.cod)
        node = CondExists if isinstance(e, CondExists) else CondForall
        return node(e.arity, canonicalize(e.premise), compose(e.var, iso),
                    canonicalize(rename_expr(e.body, iso)))
    return e


def exprs_equivalent(a: Expr, b: Expr) -> bool:
    """Structural equality up to canonical renaming of bound names."""
    return canonicalize(a) == canonicalize(b)
