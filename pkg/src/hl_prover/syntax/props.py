"""Decidable propositions: relations combined with connectives and bounded quantifiers."""

from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .terms import Numeral, Rel, Substitution, Term, Var, instantiate, iter_subterms


@dataclass(frozen=True)
class RelLit:
    rel: Rel


@dataclass(frozen=True)
class BoundedForall:
    """``forall var < bound, body`` over nat; ``bound`` is None when unbounded"""
    var: str
    bound: Optional[Numeral]
    body: "DecProp"


@dataclass(frozen=True)
class And:
    left: "DecProp"
    right: "DecProp"


@dataclass(frozen=True)
class Or:
    left: "DecProp"
    right: "DecProp"


@dataclass(frozen=True)
class Not:
    arg: "DecProp"


@dataclass(frozen=True)
class Implies:
    left: "DecProp"
    right: "DecProp"


DecProp = Union[RelLit, BoundedForall, And, Or, Not, Implies]


def substitute_prop(prop: DecProp, name: str, value: Term) -> DecProp:
    """Replace free occurrences of variable ``name`` by ``value``"""
    if isinstance(prop, RelLit):
        return RelLit(instantiate(prop.rel, Substitution(terms={name: value})))
    if isinstance(prop, BoundedForall):
        if prop.var == name:
            return prop
        return BoundedForall(prop.var, prop.bound, substitute_prop(prop.body, name, value))
    if isinstance(prop, Not):
        return Not(substitute_prop(prop.arg, name, value))
    return type(prop)(substitute_prop(prop.left, name, value), substitute_prop(prop.right, name, value))


def iter_relations(prop: DecProp) -> Iterator[Rel]:
    if isinstance(prop, RelLit):
        yield prop.rel
    elif isinstance(prop, BoundedForall):
        yield from iter_relations(prop.body)
    elif isinstance(prop, Not):
        yield from iter_relations(prop.arg)
    else:
        yield from iter_relations(prop.left)
        yield from iter_relations(prop.right)


def prop_free_vars(prop: DecProp, bound: frozenset = frozenset()) -> list:
    """Free variable names in first-occurrence order"""
    seen: list = []
    if isinstance(prop, RelLit):
        for _, sub in iter_subterms(prop.rel):
            if isinstance(sub, Var) and sub.name not in bound and sub.name not in seen:
                seen.append(sub.name)
        return seen
    if isinstance(prop, BoundedForall):
        return prop_free_vars(prop.body, bound | {prop.var})
    parts = [prop.arg] if isinstance(prop, Not) else [prop.left, prop.right]
    for part in parts:
        for name in prop_free_vars(part, bound):
            if name not in seen:
                seen.append(name)
    return seen


def prop_depth(prop: DecProp) -> int:
    if isinstance(prop, RelLit):
        return 1
    if isinstance(prop, BoundedForall):
        return 1 + prop_depth(prop.body)
    if isinstance(prop, Not):
        return 1 + prop_depth(prop.arg)
    return 1 + max(prop_depth(prop.left), prop_depth(prop.right))


__all__ = [
    "RelLit",
    "BoundedForall",
    "And",
    "Or",
    "Not",
    "Implies",
    "DecProp",
    "substitute_prop",
    "iter_relations",
    "prop_free_vars",
    "prop_depth",
]
