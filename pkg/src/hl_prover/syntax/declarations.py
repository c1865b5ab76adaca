"""Declaration records produced by the parser"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

from .props import DecProp
from .sorts import Sort
from .terms import ClassAtom, Rel, Term

DEFAULT_PRIORITY = 1000


class RuleKind(Enum):
    SIMP = "simp"
    DEF = "def"
    CAST_MOVE = "cast_move"
    CAST_ELIM = "cast_elim"


@dataclass(frozen=True)
class SourcePosition:
    line: int
    column: int


@dataclass(frozen=True)
class Binder:
    name: str
    sort: Sort


@dataclass(frozen=True)
class Hypothesis:
    name: str
    statement: Rel


@dataclass(frozen=True, kw_only=True)
class Declaration:
    name: str
    doc: Optional[str] = None
    attributes: Tuple[str, ...] = ()
    position: Optional[SourcePosition] = None

    def has_attribute(self, attribute: str) -> bool:
        return any(a == attribute or a.startswith(f"{attribute}=") for a in self.attributes)

    def attribute_value(self, attribute: str) -> Optional[str]:
        prefix = f"{attribute}="
        for a in self.attributes:
            if a.startswith(prefix):
                return a[len(prefix):]
        return None

    @property
    def is_private(self) -> bool:
        return self.has_attribute("private")


@dataclass(frozen=True, kw_only=True)
class SortDecl(Declaration):
    sort: Sort


@dataclass(frozen=True, kw_only=True)
class OpDecl(Declaration):
    """Function symbol; ``result`` is None for attribute-only redeclarations of a built-in"""
    params: Tuple[Sort, ...] = ()
    result: Optional[Sort] = None


@dataclass(frozen=True, kw_only=True)
class CoercionDecl(Declaration):
    source: Sort
    target: Sort

    @property
    def injective(self) -> bool:
        return self.has_attribute("injective")


@dataclass(frozen=True, kw_only=True)
class ClassDecl(Declaration):
    params: Tuple[str, ...]
    projections: Tuple[str, ...] = ()
    operations: Tuple[OpDecl, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True, kw_only=True)
class InstanceRule(Declaration):
    head: ClassAtom
    body: Tuple[ClassAtom, ...] = ()
    priority: int = DEFAULT_PRIORITY

    @property
    def is_fact(self) -> bool:
        return not self.body


@dataclass(frozen=True, kw_only=True)
class RewriteRule(Declaration):
    lhs: Term
    rhs: Term
    kind: RuleKind = RuleKind.SIMP
    conditions: Tuple[ClassAtom, ...] = ()
    binders: Tuple[Binder, ...] = ()

    @property
    def statement(self) -> Rel:
        return Rel("=", self.lhs, self.rhs)


@dataclass(frozen=True, kw_only=True)
class Lemma(Declaration):
    statement: Term
    binders: Tuple[Binder, ...] = ()
    hypotheses: Tuple[Hypothesis, ...] = ()
    conditions: Tuple[ClassAtom, ...] = ()


GoalStatement = Union[ClassAtom, Rel, DecProp]


@dataclass(frozen=True, kw_only=True)
class Goal(Declaration):
    statement: GoalStatement
    binders: Tuple[Binder, ...] = ()
    hypotheses: Tuple[Hypothesis, ...] = ()
    tactic: Optional[str] = None
    default_sort: Optional[Sort] = None

    @property
    def is_class_goal(self) -> bool:
        return isinstance(self.statement, ClassAtom)


AnyDeclaration = Union[SortDecl, OpDecl, CoercionDecl, ClassDecl, InstanceRule, RewriteRule, Lemma, Goal]
