"""
Literal arithmetic.

``norm_num`` evaluates closed arithmetic bottom-up. Each operation node is
replaced by its value in one trace step whose justification ``num:<i>``
points at fact ``i`` of the attached ``NumTrace``; the last statement is a
relation between two literals, closed by a comparison fact.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from ..core.exceptions import ExponentLimitError, NonLiteralError, UnsupportedSymbolError
from ..prooftrace import ProofTrace, Terminal, TraceStep
from ..syntax import NAT, Op, Position, Rel, Substitution, Term, format_term, replace_at, subterm_at
from .literals import literal_term, literal_value
from .numerals import NumFact, NumProver, NumTrace
from .ring import EXPONENT_LIMIT

logger = logging.getLogger(__name__)

NUM_PREFIX = "num:"

ARITH_SYMBOLS = ("+", "*", "-", "neg", "^")

RELATION_FACTS = {"=": "eq", "<": "lt", "≤": "le", "≠": "ne"}


def fact_relation(symbol: str, sort) -> str:
    """Kernel relation stating the value of an operation node"""
    if symbol == "-":
        return "tsub" if sort == NAT else "sub"
    return {"+": "add", "*": "mul", "neg": "neg", "^": "pow"}[symbol]


def num_index(justification: str) -> Optional[int]:
    if not justification.startswith(NUM_PREFIX):
        return None
    try:
        return int(justification[len(NUM_PREFIX):])
    except ValueError:
        return None


@dataclass
class FalseProp:
    """The relation evaluates to false"""
    relation: Rel
    lhs: int
    rhs: int

    def __str__(self) -> str:
        return f"{self.relation.symbol} fails on literals {self.lhs} and {self.rhs}"


def _holds(symbol: str, a: int, b: int) -> bool:
    return {"=": a == b, "<": a < b, "≤": a <= b, "≠": a != b}[symbol]


class _NumEvaluator:
    def __init__(self, statement: Term, exponent_limit: int):
        self.statement = statement
        self.exponent_limit = exponent_limit
        self.prover = NumProver()
        self.steps: List[TraceStep] = []

    def eval(self, position: Position) -> int:
        term = subterm_at(self.statement, position)
        value = literal_value(term)
        if value is not None:
            return value
        if not isinstance(term, Op) or term.symbol not in ARITH_SYMBOLS:
            raise NonLiteralError(position, format_term(term))
        symbol = term.symbol
        if symbol == "neg":
            if term.sort == NAT:
                raise UnsupportedSymbolError("neg", position, "nat has no negation")
            a = self.eval(position + (0,))
            result, index = self.prover.prove_neg(a)
        elif symbol == "^":
            a = self.eval(position + (0,))
            n = self.eval(position + (1,))
            if n > self.exponent_limit:
                raise ExponentLimitError(f"exponent {n} above limit {self.exponent_limit}")
            result, index = self.prover.prove_pow(a, n)
        else:
            a = self.eval(position + (0,))
            b = self.eval(position + (1,))
            if symbol == "+":
                result, index = self.prover.prove_add(a, b)
            elif symbol == "*":
                result, index = self.prover.prove_mul(a, b)
            elif term.sort == NAT:
                result, index = self.prover.prove_tsub(a, b)
            else:
                result, index = self.prover.prove_sub(a, b)
        self.statement = replace_at(self.statement, position, literal_term(result, term.sort))
        self.steps.append(TraceStep(f"{NUM_PREFIX}{index}", position, Substitution(), self.statement))
        return result


def norm_num_eval(term: Term, exponent_limit: int = EXPONENT_LIMIT) -> Tuple[Term, NumTrace]:
    """Value of a closed arithmetic term as a literal, with the facts used"""
    evaluator = _NumEvaluator(term, exponent_limit)
    evaluator.eval(())
    return evaluator.statement, evaluator.prover.trace


def norm_num_prove(relation: Rel, exponent_limit: int = EXPONENT_LIMIT) -> Union[ProofTrace, FalseProp]:
    if not isinstance(relation, Rel) or relation.symbol not in RELATION_FACTS:
        raise UnsupportedSymbolError(getattr(relation, "symbol", "?"), (), "norm_num decides = < ≤ ≠")
    evaluator = _NumEvaluator(relation, exponent_limit)
    a = evaluator.eval((0,))
    b = evaluator.eval((1,))
    if not _holds(relation.symbol, a, b):
        logger.debug(f"norm_num: {format_term(relation)} is false ({a}, {b})")
        return FalseProp(relation, a, b)
    prover = evaluator.prover
    {"=": prover.prove_eq, "<": prover.prove_lt, "≤": prover.prove_le, "≠": prover.prove_ne}[relation.symbol](a, b)
    return ProofTrace(relation, "norm_num", evaluator.steps, Terminal.LITERAL_TRUTH, prover.trace)


def closing_fact(relation: Rel) -> Optional[NumFact]:
    """Comparison fact that closes a relation between two literals"""
    if relation.symbol not in RELATION_FACTS:
        return None
    a, b = literal_value(relation.lhs), literal_value(relation.rhs)
    if a is None or b is None:
        return None
    return NumFact(RELATION_FACTS[relation.symbol], (a, b))


_NEGATED = {"<": ("le", True), "≤": ("lt", True), "=": ("ne", False), "≠": ("eq", False)}


def deciding_fact(symbol: str, a: int, b: int, value: bool) -> Optional[NumFact]:
    """
    Kernel fact settling ``a symbol b`` either way.

    A false ``a < b`` is settled by ``b ≤ a``, a false ``a = b`` by ``a ≠ b``.
    Divisibility has no kernel fact.
    """
    if symbol not in RELATION_FACTS:
        return None
    if value:
        return NumFact(RELATION_FACTS[symbol], (a, b))
    rel, swap = _NEGATED[symbol]
    return NumFact(rel, (b, a) if swap else (a, b))


def divides(a: int, b: int) -> bool:
    return b == 0 if a == 0 else b % a == 0


def norm_num_decide(relation: Rel, exponent_limit: int = EXPONENT_LIMIT) -> Tuple[bool, int, int, NumTrace]:
    """Truth value of a closed relation, both side values and the facts settling it"""
    if not isinstance(relation, Rel) or (relation.symbol not in RELATION_FACTS and relation.symbol != "∣"):
        raise UnsupportedSymbolError(getattr(relation, "symbol", "?"), (), "decidable relations are = < ≤ ≠ ∣")
    evaluator = _NumEvaluator(relation, exponent_limit)
    a = evaluator.eval((0,))
    b = evaluator.eval((1,))
    if relation.symbol == "∣":
        return divides(a, b), a, b, evaluator.prover.trace
    value = _holds(relation.symbol, a, b)
    prover = evaluator.prover
    fact = deciding_fact(relation.symbol, a, b, value)
    prove = {"eq": prover.prove_eq, "lt": prover.prove_lt, "le": prover.prove_le, "ne": prover.prove_ne}[fact.rel]
    prove(*fact.args)
    return value, a, b, prover.trace


def replay_value(term: Term, trace: NumTrace) -> Optional[int]:
    """
    Value of a closed term using only facts present in ``trace``.

    None when some operation node has no fact stating its value.
    """
    value = literal_value(term)
    if value is not None:
        return value
    if not isinstance(term, Op) or term.symbol not in ARITH_SYMBOLS:
        return None
    if term.symbol == "neg" and term.sort == NAT:
        return None
    operands = []
    for arg in term.args:
        operand = replay_value(arg, trace)
        if operand is None:
            return None
        operands.append(operand)
    rel = fact_relation(term.symbol, term.sort)
    for step in trace.steps:
        fact = step.fact
        if fact.rel == rel and fact.args[:-1] == tuple(operands):
            return fact.args[-1]
    return None
