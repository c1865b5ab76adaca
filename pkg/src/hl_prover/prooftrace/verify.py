"""
Independent trace verifier.

Trusts only the environment (rewrite rules, instance rules, coercions), the
fixed ring and abel schema libraries and the numeral kernel. Every step must
rewrite exactly one subterm of the current statement by an instance of the
rule it names; the terminal must then hold of the final statement.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..arith.abel import GROUP_CLASSES, MONOID_CLASSES
from ..arith.capability import RING, carrier_mode
from ..arith.literals import literal_term, literal_value
from ..arith.norm_num import ARITH_SYMBOLS, closing_fact, fact_relation, num_index
from ..arith.numerals import NumTrace
from ..arith.ring import RING_CLASSES, SEMIRING_CLASSES
from ..arith.schemas import Schema, abel_schemas, ring_schemas, schema_problem
from ..core.exceptions import HLProverError
from ..decide import Evidence, as_prop, replay
from ..hierarchy import Env
from ..linarith import LinarithEvidence, build_systems, check_cert
from ..resolver import Derivation, Query, SearchConfig, check_derivation, resolve_backward
from ..rewriter.norm_cast import CAST_NUMERAL, NUMERAL_CAST, casts_injective, cast_numeral_ok, numeral_cast_ok
from ..syntax import ClassAtom, Op, Rel, RuleKind, Term, replace_at, subterm_at
from .trace import HypothesisEvidence, ProofTrace, Statement, Terminal, TraceStep

logger = logging.getLogger(__name__)

CONDITION_DEPTH = 8

REFLEXIVE = ("=", "≤")

RULE_KINDS = {
    "simp": (RuleKind.SIMP, RuleKind.DEF),
    "dsimp": (RuleKind.DEF,),
    "norm_cast": (RuleKind.CAST_MOVE, RuleKind.CAST_ELIM),
}


@dataclass
class Verdict:
    """``accepted``, or the index of the first bad step and why"""
    accepted: bool
    step: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        if self.accepted:
            return "accepted"
        return f"rejected at step {self.step}: {self.reason}"


def accepted() -> Verdict:
    return Verdict(True)


def rejected(step: int, reason: str) -> Verdict:
    return Verdict(False, step, reason)


StepCheck = Callable[[TraceStep, Term, Term], Optional[str]]


class _Checker:
    """Step checks for one trace; the table depends on the tactic"""

    def __init__(self, trace: ProofTrace, env: Env):
        self.trace = trace
        self.env = env
        self._conditions: Dict[ClassAtom, bool] = {}

    def step_check(self) -> Optional[StepCheck]:
        tactic = self.trace.tactic
        if tactic == "ring":
            return self._schema_step(ring_schemas(), self._ring_sort_problem)
        if tactic == "abel":
            return self._schema_step(abel_schemas(), self._abel_sort_problem)
        if tactic in RULE_KINDS:
            return self._rule_step
        if tactic == "norm_num":
            return self._numeral_step
        return None

    # -- schema libraries ---------------------------------------------------

    def _schema_step(self, table: Dict[str, Schema], sort_problem) -> StepCheck:
        def check(step: TraceStep, before: Term, after: Term) -> Optional[str]:
            schema = table.get(step.justification)
            if schema is None:
                return f"unknown schema '{step.justification}'"
            problem = schema_problem(schema, before, step.substitution, after)
            if problem:
                return problem
            return sort_problem(schema, before)

        return check

    def _ring_sort_problem(self, schema: Schema, before: Term) -> Optional[str]:
        try:
            mode = carrier_mode(before.sort, self.env, RING_CLASSES, SEMIRING_CLASSES)
        except HLProverError as e:
            return str(e)
        if schema.needs_neg and mode != RING:
            return f"{schema.name} needs negation, {before.sort} is only a semiring"
        return None

    def _abel_sort_problem(self, schema: Schema, before: Term) -> Optional[str]:
        try:
            mode = carrier_mode(before.sort, self.env, GROUP_CLASSES, MONOID_CLASSES)
        except HLProverError as e:
            return str(e)
        if schema.needs_neg and mode != RING:
            return f"{schema.name} needs negation, {before.sort} is only a monoid"
        return None

    # -- environment rules --------------------------------------------------

    def _discharged(self, atom: ClassAtom) -> bool:
        if atom not in self._conditions:
            if not atom.is_ground:
                self._conditions[atom] = False
            else:
                query = Query(atom, SearchConfig(max_depth=CONDITION_DEPTH, strategy="backward"))
                self._conditions[atom] = resolve_backward(query, self.env).success
        return self._conditions[atom]

    def _rule_step(self, step: TraceStep, before: Term, after: Term) -> Optional[str]:
        symbols = self.env.symbols
        if self.trace.tactic == "norm_cast" and step.justification == CAST_NUMERAL:
            return None if cast_numeral_ok(before, after, symbols) else "not a numeral lifted to a cast"
        if self.trace.tactic == "norm_cast" and step.justification == NUMERAL_CAST:
            return None if numeral_cast_ok(before, after, symbols) else "not a cast numeral folded back"
        rule = self.env.rewrite_rule(step.justification)
        if rule is None:
            return f"unknown rule '{step.justification}'"
        if rule.kind not in RULE_KINDS[self.trace.tactic]:
            return f"{rule.name} is a {rule.kind.value} rule, not usable by {self.trace.tactic}"
        problem = schema_problem(Schema(rule.name, rule.lhs, rule.rhs), before, step.substitution, after)
        if problem:
            return problem
        for condition in rule.conditions:
            atom = condition.substitute(step.substitution.sorts)
            if not self._discharged(atom):
                return f"{rule.name}: condition {atom} not discharged"
        if rule.kind == RuleKind.CAST_ELIM and not casts_injective(rule, step.substitution, symbols):
            return f"{rule.name}: elimination through a coercion that is not injective"
        return None

    # -- literals -----------------------------------------------------------

    def _numeral_step(self, step: TraceStep, before: Term, after: Term) -> Optional[str]:
        numerals = self.trace.evidence
        if not isinstance(numerals, NumTrace):
            return "norm_num trace without numeral facts"
        index = num_index(step.justification)
        if index is None or not 0 <= index < len(numerals.steps):
            return f"'{step.justification}' names no numeral fact"
        if not isinstance(before, Op) or before.symbol not in ARITH_SYMBOLS:
            return "numeral step on a subterm that is not an arithmetic operation"
        operands = [literal_value(arg) for arg in before.args]
        if any(v is None for v in operands):
            return "numeral step on an operation whose arguments are not literals"
        fact = numerals.fact(index)
        if fact.rel != fact_relation(before.symbol, before.sort) or fact.args[:-1] != tuple(operands):
            return f"fact {fact} does not state the value of this operation"
        try:
            expected = literal_term(fact.args[-1], before.sort)
        except ValueError as e:
            return str(e)
        if after != expected:
            return f"result is not the literal {fact.args[-1]}"
        return None


def _replay(
    checker: _Checker, statement: Statement, steps: Sequence[TraceStep], offset: int = 0
) -> Tuple[Statement, Optional[Verdict]]:
    check = checker.step_check()
    if steps and check is None:
        return statement, rejected(offset, f"tactic '{checker.trace.tactic}' takes no rewrite steps")
    current = statement
    for index, step in enumerate(steps, offset):
        if any(i < 0 for i in step.position):
            return current, rejected(index, "negative position")
        try:
            before = subterm_at(current, step.position)
            after = subterm_at(step.result, step.position)
            rest_matches = replace_at(current, step.position, after) == step.result
        except (IndexError, TypeError) as e:
            return current, rejected(index, f"position {list(step.position)}: {e}")
        if not rest_matches:
            return current, rejected(index, "statement changed outside the rewritten position")
        problem = check(step, before, after)
        if problem:
            return current, rejected(index, problem)
        current = step.result
    return current, None


def _terminal(checker: _Checker, final: Statement) -> Optional[str]:
    trace = checker.trace
    terminal = trace.terminal
    if terminal == Terminal.REFLEXIVITY:
        if isinstance(final, Rel) and final.symbol in REFLEXIVE and final.lhs == final.rhs:
            return None
        return "final statement is not reflexive"
    if terminal == Terminal.LITERAL_TRUTH:
        numerals = trace.evidence
        if not isinstance(numerals, NumTrace):
            return "literal truth without numeral facts"
        bad = numerals.check()
        if bad is not None:
            return f"numeral fact {bad[0]}: {bad[1]}"
        fact = closing_fact(final) if isinstance(final, Rel) else None
        if fact is None or not numerals.holds(fact):
            return "no numeral fact closes the final relation"
        return None
    if terminal == Terminal.CERTIFICATE:
        return _certificate_problem(checker, final)
    if terminal == Terminal.DERIVATION:
        if not isinstance(final, ClassAtom) or not isinstance(trace.evidence, Derivation):
            return "derivation terminal needs a class goal and a derivation"
        result = check_derivation(trace.evidence, final, checker.env)
        return None if result else "; ".join(result.reasons)
    if terminal == Terminal.DECISION:
        if not isinstance(trace.evidence, Evidence):
            return "decision terminal without evaluation evidence"
        problem = replay(as_prop(final), trace.evidence)
        if problem:
            return problem
        return None if trace.evidence.value else "proposition evaluates to false"
    if terminal == Terminal.HYPOTHESIS:
        return _hypothesis_problem(checker, final)
    return f"unknown terminal {terminal}"


def _certificate_problem(checker: _Checker, final: Statement) -> Optional[str]:
    trace = checker.trace
    evidence = trace.evidence
    if not isinstance(evidence, LinarithEvidence) or not isinstance(final, Rel):
        return "certificate terminal needs a relation and linear evidence"
    try:
        systems = build_systems([h.statement for h in trace.hypotheses], final, checker.env)
    except HLProverError as e:
        return f"cannot rebuild the linear systems: {e}"
    if len(systems) != len(evidence.certificates):
        return f"{len(systems)} system(s) to refute, {len(evidence.certificates)} certificate(s) given"
    for index, (system, certificate) in enumerate(zip(systems, evidence.certificates)):
        if not check_cert(certificate, system):
            return f"certificate {index} does not refute its system"
    return None


def _hypothesis_problem(checker: _Checker, final: Statement) -> Optional[str]:
    evidence = checker.trace.evidence
    if not isinstance(evidence, HypothesisEvidence):
        return "hypothesis terminal without hypothesis evidence"
    named = {h.name: h.statement for h in checker.trace.hypotheses}
    if evidence.name not in named:
        return f"no hypothesis named '{evidence.name}'"
    reached, verdict = _replay(checker, named[evidence.name], evidence.steps)
    if verdict is not None:
        return f"hypothesis step {verdict.step}: {verdict.reason}"
    if reached != final:
        return f"goal and hypothesis '{evidence.name}' normalize differently"
    return None


def verify(trace: ProofTrace, env: Env) -> Verdict:
    """
    Check a trace against a sealed environment.

    Returns:
        Verdict that is truthy when accepted; rejections name the first bad
        step, or ``len(steps)`` when the terminal fails
    """
    checker = _Checker(trace, env)
    final, verdict = _replay(checker, trace.goal, trace.steps)
    if verdict is not None:
        logger.info(f"verify: {trace.tactic} trace {verdict}")
        return verdict
    problem = _terminal(checker, final)
    if problem:
        verdict = rejected(len(trace.steps), problem)
        logger.info(f"verify: {trace.tactic} trace {verdict}")
        return verdict
    logger.debug(f"verify: {trace.tactic} trace accepted ({len(trace.steps)} step(s))")
    return accepted()


def verify_all(traces: Sequence[ProofTrace], env: Env) -> List[Verdict]:
    return [verify(trace, env) for trace in traces]
