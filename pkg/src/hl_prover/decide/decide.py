"""
Decidable propositions evaluated by computation.

``decide`` walks a proposition left to right, evaluating literal relations
with the numeral kernel and enumerating bounded quantifiers; the evidence it
returns records every branch taken. ``ite_eval`` selects between two terms
by the value of a proposition that does not itself appear in the result.
"""

import logging
from dataclasses import dataclass
from typing import Tuple, Union

from ..arith.norm_num import norm_num_decide
from ..arith.ring import EXPONENT_LIMIT
from ..core.exceptions import UndecidableError
from ..prooftrace import ProofTrace, Terminal
from ..syntax import REAL, And, BoundedForall, Implies, Not, Or, Rel, RelLit, Term, format_prop
from ..syntax.props import DecProp, iter_relations, prop_free_vars
from .evidence import AND, FORALL, IMPLIES, LIT, NOT, OR, Evidence, instance

logger = logging.getLogger(__name__)

UNBOUNDED = "unbounded"
NONCOMPUTABLE = "noncomputable"


@dataclass
class Refuted:
    """The proposition evaluates to false"""
    prop: DecProp
    evidence: Evidence

    def __str__(self) -> str:
        return f"{format_prop(self.prop)} evaluates to false"


def as_prop(statement: Union[Rel, DecProp]) -> DecProp:
    return RelLit(statement) if isinstance(statement, Rel) else statement


def check_decidable(prop: DecProp) -> None:
    """Raise ``UndecidableError`` unless ``prop`` is in the computable fragment"""
    _check_bounds(prop)
    free = prop_free_vars(prop)
    if free:
        raise UndecidableError(NONCOMPUTABLE, f"free variable(s) {', '.join(free)}")
    for relation in iter_relations(prop):
        if relation.lhs.sort == REAL:
            raise UndecidableError(NONCOMPUTABLE, "relations over real are only classically decidable")


def _check_bounds(prop: DecProp) -> None:
    if isinstance(prop, RelLit):
        return
    if isinstance(prop, BoundedForall):
        if prop.bound is None:
            raise UndecidableError(UNBOUNDED, f"quantifier over {prop.var} has no bound")
        _check_bounds(prop.body)
    elif isinstance(prop, Not):
        _check_bounds(prop.arg)
    else:
        _check_bounds(prop.left)
        _check_bounds(prop.right)


class _Evaluator:
    def __init__(self, exponent_limit: int):
        self.exponent_limit = exponent_limit

    def eval(self, prop: DecProp) -> Evidence:
        if isinstance(prop, RelLit):
            value, _, _, numerals = norm_num_decide(prop.rel, self.exponent_limit)
            return Evidence(LIT, value, [], prop.rel, numerals)
        if isinstance(prop, Not):
            inner = self.eval(prop.arg)
            return Evidence(NOT, not inner.value, [inner])
        if isinstance(prop, BoundedForall):
            return self._forall(prop)
        kind = {And: AND, Or: OR, Implies: IMPLIES}[type(prop)]
        left = self.eval(prop.left)
        if kind == AND and not left.value:
            return Evidence(AND, False, [left])
        if kind == OR and left.value:
            return Evidence(OR, True, [left])
        if kind == IMPLIES and not left.value:
            return Evidence(IMPLIES, True, [left])
        right = self.eval(prop.right)
        return Evidence(kind, right.value, [left, right])

    def _forall(self, prop: BoundedForall) -> Evidence:
        cases = []
        for value in range(prop.bound.value):
            case = self.eval(instance(prop, value))
            cases.append(case)
            if not case.value:
                logger.debug(f"decide: counterexample {prop.var} = {value}")
                return Evidence(FORALL, False, cases)
        return Evidence(FORALL, True, cases)


def decide(prop: Union[Rel, DecProp], exponent_limit: int = EXPONENT_LIMIT) -> Tuple[bool, Evidence]:
    """
    Value of a closed decidable proposition and its evaluation tree.

    Raises:
        UndecidableError: unbounded quantifier, free variable or real relation
    """
    prop = as_prop(prop)
    check_decidable(prop)
    evidence = _Evaluator(exponent_limit).eval(prop)
    logger.debug(f"decide: {format_prop(prop)} is {evidence.value} ({evidence.size()} node(s))")
    return evidence.value, evidence


def ite_eval(prop: Union[Rel, DecProp], then_val: Term, else_val: Term) -> Term:
    value, _ = decide(prop)
    return then_val if value else else_val


def decide_goal(prop: Union[Rel, DecProp], exponent_limit: int = EXPONENT_LIMIT) -> Union[ProofTrace, Refuted]:
    """``dec_trivial``: a decision trace when the proposition is true"""
    prop = as_prop(prop)
    value, evidence = decide(prop, exponent_limit)
    if not value:
        return Refuted(prop, evidence)
    return ProofTrace(prop, "dec_trivial", [], Terminal.DECISION, evidence)
