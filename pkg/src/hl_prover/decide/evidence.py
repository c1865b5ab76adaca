"""Evaluation trees recorded by ``decide`` and their replay."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..arith.norm_num import deciding_fact, divides, replay_value
from ..arith.numerals import NumTrace
from ..prooftrace.trace import term_from_json, term_to_json
from ..syntax import NAT, And, BoundedForall, Implies, Not, Numeral, Or, Rel, RelLit, Sort, Var, iter_subterms
from ..syntax.props import DecProp, iter_relations, substitute_prop

LIT = "lit"
NOT = "not"
AND = "and"
OR = "or"
IMPLIES = "implies"
FORALL = "forall"

KINDS = {RelLit: LIT, Not: NOT, And: AND, Or: OR, Implies: IMPLIES, BoundedForall: FORALL}


@dataclass
class Evidence:
    """
    One node per connective evaluated.

    Binary connectives keep one child when the left operand settled the
    value. Quantifier nodes keep one child per instance checked, in order,
    stopping at the first false one. Literal leaves carry the relation and
    the numeral facts that settle it.
    """
    kind: str
    value: bool
    children: List["Evidence"] = field(default_factory=list)
    relation: Optional[Rel] = None
    numerals: Optional[NumTrace] = None

    def size(self) -> int:
        return 1 + sum(child.size() for child in self.children)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "kind": self.kind,
            "value": self.value,
            "children": [child.to_dict() for child in self.children],
        }
        if self.relation is not None:
            data["relation"] = term_to_json(self.relation)
        if self.numerals is not None:
            data["numerals"] = self.numerals.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Evidence":
        relation = data.get("relation")
        numerals = data.get("numerals")
        return cls(
            data["kind"],
            bool(data["value"]),
            [cls.from_dict(child) for child in data.get("children", [])],
            None if relation is None else term_from_json(relation),
            None if numerals is None else NumTrace.from_dict(numerals),
        )


def bound_sort(body: DecProp, var: str) -> Sort:
    """Sort the quantified variable is used at; nat when unused"""
    for relation in iter_relations(body):
        for _, sub in iter_subterms(relation):
            if isinstance(sub, Var) and sub.name == var:
                return sub.sort
    return NAT


def instance(prop: BoundedForall, value: int) -> DecProp:
    return substitute_prop(prop.body, prop.var, Numeral.of_int(value, bound_sort(prop.body, prop.var)))


def replay(prop: DecProp, evidence: Evidence) -> Optional[str]:
    """None when ``evidence`` establishes its value for ``prop``, else the reason it does not"""
    if isinstance(prop, Rel):
        prop = RelLit(prop)
    kind = KINDS.get(type(prop))
    if evidence.kind != kind:
        return f"expected a {kind} node, found {evidence.kind}"
    if isinstance(prop, RelLit):
        return _replay_literal(prop.rel, evidence)
    children = evidence.children
    if isinstance(prop, Not):
        if len(children) != 1:
            return "negation needs one child"
        return replay(prop.arg, children[0]) or _expect(evidence, not children[0].value)
    if isinstance(prop, BoundedForall):
        return _replay_forall(prop, evidence)
    if not children or len(children) > 2:
        return f"{kind} needs one or two children"
    problem = replay(prop.left, children[0])
    if problem:
        return problem
    settled = {AND: False, OR: True, IMPLIES: False}[kind]
    if children[0].value == settled:
        if len(children) != 1:
            return f"{kind} evaluated its right operand after the left settled it"
        return _expect(evidence, kind == OR or kind == IMPLIES)
    if len(children) != 2:
        return f"{kind} is missing its right operand"
    return replay(prop.right, children[1]) or _expect(evidence, children[1].value)


def _expect(evidence: Evidence, value: bool) -> Optional[str]:
    if evidence.value != value:
        return f"{evidence.kind} node claims {evidence.value}, its children give {value}"
    return None


def _replay_literal(relation: Rel, evidence: Evidence) -> Optional[str]:
    if evidence.relation != relation:
        return "literal node is about a different relation"
    trace = evidence.numerals
    if trace is None:
        return "literal node has no numeral facts"
    bad = trace.check()
    if bad is not None:
        return f"numeral fact {bad[0]}: {bad[1]}"
    a = replay_value(relation.lhs, trace)
    b = replay_value(relation.rhs, trace)
    if a is None or b is None:
        return "numeral facts do not evaluate both sides"
    if relation.symbol == "∣":
        return _expect(evidence, divides(a, b))
    fact = deciding_fact(relation.symbol, a, b, evidence.value)
    if fact is None or not trace.holds(fact):
        return f"no numeral fact settles {relation.symbol} on {a} and {b}"
    return None


def _replay_forall(prop: BoundedForall, evidence: Evidence) -> Optional[str]:
    if prop.bound is None:
        return "unbounded quantifier"
    bound = prop.bound.value
    children = evidence.children
    if len(children) > bound:
        return f"{len(children)} instances checked below bound {bound}"
    for value, child in enumerate(children):
        problem = replay(instance(prop, value), child)
        if problem:
            return f"instance {value}: {problem}"
        if not child.value and value != len(children) - 1:
            return f"instance {value} is false but evaluation went on"
    if children and not children[-1].value:
        return _expect(evidence, False)
    if len(children) != bound:
        return f"only {len(children)} of {bound} instances checked"
    return _expect(evidence, True)
