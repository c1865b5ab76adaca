"""
Proof traces and their JSON form.

A trace starts from a goal statement and rewrites it step by step; each step
names its justification (a rule, a schema or a numeral fact), the position it
rewrites, the matching substitution and the whole statement afterwards. The
terminal says why the last statement holds.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from ..core.exceptions import TraceError
from ..syntax import (
    And,
    Binder,
    BoundedForall,
    ClassAtom,
    Coerce,
    DecProp,
    Hypothesis,
    Implies,
    Not,
    Numeral,
    Op,
    Or,
    Position,
    Rel,
    RelLit,
    Sort,
    Substitution,
    Term,
    Var,
    replace_at,
    subterm_at,
)
from ..syntax.sorts import format_sort, parse_marked_sort

SCHEMA_VERSION = 1

Statement = Union[Term, ClassAtom, DecProp]


class Terminal(str, Enum):
    REFLEXIVITY = "reflexivity"
    LITERAL_TRUTH = "literal_truth"
    CERTIFICATE = "certificate"
    DERIVATION = "derivation"
    DECISION = "decision"
    HYPOTHESIS = "hypothesis"


@dataclass(frozen=True)
class RewriteStep:
    """One rule application: ``before`` at ``position`` became ``after``"""
    rule: str
    position: Position
    substitution: Substitution
    before: Term
    after: Term


@dataclass
class RewriteTrace:
    initial: Term
    steps: List[RewriteStep] = field(default_factory=list)

    def replay(self) -> Term:
        term = self.initial
        for index, step in enumerate(self.steps):
            if subterm_at(term, step.position) != step.before:
                raise TraceError(f"step {index} ({step.rule}) does not apply at {list(step.position)}")
            term = replace_at(term, step.position, step.after)
        return term

    @property
    def final(self) -> Term:
        return self.replay()

    def rules_used(self) -> List[str]:
        seen: Dict[str, None] = {}
        for step in self.steps:
            seen.setdefault(step.rule, None)
        return list(seen)


@dataclass(frozen=True)
class TraceStep:
    justification: str
    position: Position
    substitution: Substitution
    result: Term


@dataclass
class HypothesisEvidence:
    """The goal, after its steps, equals hypothesis ``name`` after ``steps``"""
    name: str
    steps: List[TraceStep] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "steps": [step_to_json(s) for s in self.steps]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "HypothesisEvidence":
        return cls(data["name"], [step_from_json(s) for s in data.get("steps", [])])


@dataclass
class ProofTrace:
    goal: Statement
    tactic: str
    steps: List[TraceStep] = field(default_factory=list)
    terminal: Terminal = Terminal.REFLEXIVITY
    evidence: Any = None
    binders: Tuple[Binder, ...] = ()
    hypotheses: Tuple[Hypothesis, ...] = ()
    default_sort: Optional[Sort] = None

    @property
    def final(self) -> Statement:
        return self.steps[-1].result if self.steps else self.goal

    def justifications(self) -> List[str]:
        return [step.justification for step in self.steps]

    def to_json(self, indent: Optional[int] = 2) -> str:
        return trace_to_document(self).model_dump_json(by_alias=True, indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "ProofTrace":
        try:
            document = TraceDocument.model_validate_json(text)
        except ValueError as e:
            raise TraceError(f"malformed trace: {e}") from e
        return trace_from_document(document)


def embed_rewrite(trace: RewriteTrace, statement: Term, offset: Position = ()) -> List[TraceStep]:
    """Turn a rewrite trace of the subterm at ``offset`` into whole-statement steps"""
    steps: List[TraceStep] = []
    current = statement
    for step in trace.steps:
        position = offset + step.position
        current = replace_at(current, position, step.after)
        steps.append(TraceStep(step.rule, position, step.substitution, current))
    return steps


# -- JSON --------------------------------------------------------------------


def sort_to_json(sort: Sort) -> str:
    return format_sort(sort, mark_variables=True)


def sort_from_json(text: str) -> Sort:
    try:
        return parse_marked_sort(text)
    except ValueError as e:
        raise TraceError(str(e)) from e


def term_to_json(term: Statement) -> Dict[str, Any]:
    if isinstance(term, Var):
        return {"kind": "var", "name": term.name, "sort": sort_to_json(term.sort)}
    if isinstance(term, Numeral):
        return {"kind": "num", "value": str(term.value), "sort": sort_to_json(term.sort)}
    if isinstance(term, Op):
        return {
            "kind": "op",
            "symbol": term.symbol,
            "args": [term_to_json(a) for a in term.args],
            "sort": sort_to_json(term.sort),
        }
    if isinstance(term, Coerce):
        return {
            "kind": "coe",
            "source": sort_to_json(term.source),
            "target": sort_to_json(term.target),
            "arg": term_to_json(term.arg),
        }
    if isinstance(term, Rel):
        return {"kind": "rel", "symbol": term.symbol, "lhs": term_to_json(term.lhs), "rhs": term_to_json(term.rhs)}
    if isinstance(term, ClassAtom):
        return {"kind": "class", "cls": term.cls, "args": [sort_to_json(a) for a in term.args]}
    if isinstance(term, RelLit):
        return {"kind": "lit", "rel": term_to_json(term.rel)}
    if isinstance(term, BoundedForall):
        return {
            "kind": "forall",
            "var": term.var,
            "bound": None if term.bound is None else term_to_json(term.bound),
            "body": term_to_json(term.body),
        }
    if isinstance(term, Not):
        return {"kind": "not", "arg": term_to_json(term.arg)}
    if isinstance(term, (And, Or, Implies)):
        kind = {And: "and", Or: "or", Implies: "implies"}[type(term)]
        return {"kind": kind, "left": term_to_json(term.left), "right": term_to_json(term.right)}
    raise TraceError(f"cannot serialize {type(term).__name__}")


def term_from_json(data: Dict[str, Any]) -> Statement:
    try:
        kind = data["kind"]
        if kind == "var":
            return Var(data["name"], sort_from_json(data["sort"]))
        if kind == "num":
            return Numeral.of_int(int(data["value"]), sort_from_json(data["sort"]))
        if kind == "op":
            return Op(data["symbol"], tuple(term_from_json(a) for a in data["args"]), sort_from_json(data["sort"]))
        if kind == "coe":
            return Coerce(sort_from_json(data["source"]), sort_from_json(data["target"]), term_from_json(data["arg"]))
        if kind == "rel":
            return Rel(data["symbol"], term_from_json(data["lhs"]), term_from_json(data["rhs"]))
        if kind == "class":
            return ClassAtom(data["cls"], tuple(sort_from_json(a) for a in data["args"]))
        if kind == "lit":
            return RelLit(term_from_json(data["rel"]))
        if kind == "forall":
            bound = data.get("bound")
            return BoundedForall(
                data["var"], None if bound is None else term_from_json(bound), term_from_json(data["body"])
            )
        if kind == "not":
            return Not(term_from_json(data["arg"]))
        if kind in ("and", "or", "implies"):
            connective = {"and": And, "or": Or, "implies": Implies}[kind]
            return connective(term_from_json(data["left"]), term_from_json(data["right"]))
    except (KeyError, TypeError, ValueError) as e:
        raise TraceError(f"malformed term: {e}") from e
    raise TraceError(f"unknown term kind '{data.get('kind')}'")


def substitution_to_json(subst: Substitution) -> Dict[str, Any]:
    return {
        "terms": {k: term_to_json(v) for k, v in subst.terms.items()},
        "sorts": {k: sort_to_json(v) for k, v in subst.sorts.items()},
    }


def substitution_from_json(data: Dict[str, Any]) -> Substitution:
    return Substitution(
        {k: term_from_json(v) for k, v in data.get("terms", {}).items()},
        {k: sort_from_json(v) for k, v in data.get("sorts", {}).items()},
    )


class StepDocument(BaseModel):
    justification: str
    position: List[int] = []
    substitution: Dict[str, Any] = {}
    result: Dict[str, Any]


class TraceDocument(BaseModel):
    """Versioned JSON envelope shared by every tactic"""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    tactic: str
    goal: Dict[str, Any]
    steps: List[StepDocument] = []
    terminal: Terminal
    evidence: Optional[Dict[str, Any]] = None
    binders: List[Dict[str, str]] = []
    hypotheses: List[Dict[str, Any]] = []
    default_sort: Optional[str] = None


def step_to_json(step: TraceStep) -> Dict[str, Any]:
    return _step_document(step).model_dump()


def step_from_json(data: Dict[str, Any]) -> TraceStep:
    return _step_from_document(StepDocument.model_validate(data))


def _step_document(step: TraceStep) -> StepDocument:
    return StepDocument(
        justification=step.justification,
        position=list(step.position),
        substitution=substitution_to_json(step.substitution),
        result=term_to_json(step.result),
    )


def _step_from_document(document: StepDocument) -> TraceStep:
    return TraceStep(
        document.justification,
        tuple(document.position),
        substitution_from_json(document.substitution),
        term_from_json(document.result),
    )


def _evidence_to_json(trace: ProofTrace) -> Optional[Dict[str, Any]]:
    if trace.evidence is None:
        return None
    return trace.evidence.to_dict()


def _evidence_from_json(terminal: Terminal, data: Optional[Dict[str, Any]]) -> Any:
    if data is None:
        return None
    if terminal == Terminal.HYPOTHESIS:
        return HypothesisEvidence.from_dict(data)
    if terminal == Terminal.LITERAL_TRUTH:
        from ..arith.numerals import NumTrace

        return NumTrace.from_dict(data)
    if terminal == Terminal.CERTIFICATE:
        from ..linarith.linarith import LinarithEvidence

        return LinarithEvidence.from_dict(data)
    if terminal == Terminal.DERIVATION:
        from ..resolver import Derivation

        return Derivation.from_dict(data)
    if terminal == Terminal.DECISION:
        from ..decide import Evidence

        return Evidence.from_dict(data)
    return None


def trace_to_document(trace: ProofTrace) -> TraceDocument:
    return TraceDocument(
        tactic=trace.tactic,
        goal=term_to_json(trace.goal),
        steps=[_step_document(s) for s in trace.steps],
        terminal=trace.terminal,
        evidence=_evidence_to_json(trace),
        binders=[{"name": b.name, "sort": sort_to_json(b.sort)} for b in trace.binders],
        hypotheses=[{"name": h.name, "statement": term_to_json(h.statement)} for h in trace.hypotheses],
        default_sort=None if trace.default_sort is None else sort_to_json(trace.default_sort),
    )


def trace_from_document(document: TraceDocument) -> ProofTrace:
    if document.schema_version != SCHEMA_VERSION:
        raise TraceError(f"unsupported trace schema {document.schema_version}")
    try:
        evidence = _evidence_from_json(document.terminal, document.evidence)
    except (KeyError, TypeError, ValueError) as e:
        raise TraceError(f"malformed {document.terminal.value} evidence: {e}") from e
    return ProofTrace(
        goal=term_from_json(document.goal),
        tactic=document.tactic,
        steps=[_step_from_document(s) for s in document.steps],
        terminal=document.terminal,
        evidence=evidence,
        binders=tuple(Binder(b["name"], sort_from_json(b["sort"])) for b in document.binders),
        hypotheses=tuple(Hypothesis(h["name"], term_from_json(h["statement"])) for h in document.hypotheses),
        default_sort=None if document.default_sort is None else sort_from_json(document.default_sort),
    )
