"""Queries, derivations and search metrics"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Tuple

from pydantic import BaseModel

from ..core.exceptions import ResolutionError
from ..syntax import ClassAtom, Sort
from ..syntax.sorts import format_sort, parse_marked_sort

STRATEGIES = ("backward", "bidir")


class Outcome(str, Enum):
    SUCCESS = "success"
    FAILURE = "failure"
    DEPTH_EXCEEDED = "depth_exceeded"
    CYCLE_DETECTED = "cycle_detected"


@dataclass(frozen=True)
class SearchConfig:
    max_depth: int = 32
    strategy: str = "backward"
    cache: bool = True
    max_atoms: int = 100000

    def __post_init__(self):
        if self.max_depth < 1:
            raise ResolutionError("max_depth must be at least 1")
        if self.strategy not in STRATEGIES:
            raise ResolutionError(f"unknown strategy '{self.strategy}'")

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> "SearchConfig":
        known = {k: config[k] for k in ("max_depth", "strategy", "cache", "max_atoms") if k in config}
        return cls(**known)


@dataclass(frozen=True)
class Query:
    atom: ClassAtom
    config: SearchConfig = field(default_factory=SearchConfig)

    def __post_init__(self):
        if not self.atom.is_ground:
            raise ResolutionError(f"query {self.atom} is not ground")


@dataclass(frozen=True)
class Derivation:
    """Tree of instance applications; ``substitution`` binds the rule's sort variables"""
    rule: str
    substitution: Dict[str, Sort] = field(default_factory=dict)
    children: Tuple["Derivation", ...] = ()

    def __hash__(self) -> int:
        return hash((self.rule, tuple(sorted(self.substitution.items())), self.children))

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=0)

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    def rules_used(self) -> Iterator[str]:
        yield self.rule
        for child in self.children:
            yield from child.rules_used()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule,
            "substitution": {k: format_sort(v, mark_variables=True) for k, v in self.substitution.items()},
            "children": [c.to_dict() for c in self.children],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Derivation":
        return cls(
            rule=data["rule"],
            substitution={k: parse_marked_sort(v) for k, v in data.get("substitution", {}).items()},
            children=tuple(cls.from_dict(c) for c in data.get("children", [])),
        )

    def render(self, indent: int = 0) -> List[str]:
        bindings = ", ".join(f"{k} := {format_sort(v)}" for k, v in self.substitution.items())
        lines = ["  " * indent + (f"{self.rule} [{bindings}]" if bindings else self.rule)]
        for child in self.children:
            lines.extend(child.render(indent + 1))
        return lines


class SearchMetrics(BaseModel):
    outcome: Outcome = Outcome.FAILURE
    nodes_expanded: int = 0
    cache_hits: int = 0
    max_depth_reached: int = 0
    elapsed_ns: int = 0


class ResolutionResult(NamedTuple):
    derivation: Optional[Derivation]
    metrics: SearchMetrics

    @property
    def success(self) -> bool:
        return self.derivation is not None
