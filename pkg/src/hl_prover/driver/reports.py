"""JSON report models shared by check, lint, bench and stats"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


class Diagnostic(BaseModel):
    severity: Severity
    code: str
    declaration: Optional[str] = None
    message: str
    line: Optional[int] = None
    column: Optional[int] = None


class GoalReport(BaseModel):
    name: str
    tactic: Optional[str] = None
    proved: bool = False
    message: str = ""


class CheckReport(BaseModel):
    file: str
    ok: bool = True
    exit_code: int = EXIT_OK
    diagnostics: List[Diagnostic] = []
    goals: List[GoalReport] = []

    @property
    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == Severity.ERROR]

    @property
    def warnings(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == Severity.WARNING]


class BenchRow(BaseModel):
    shape: str
    n: int
    strategy: str
    cache: bool
    outcome: str
    nodes_expanded: int
    cache_hits: int
    max_depth_reached: int
    elapsed_ns: int


class StatsReport(BaseModel):
    file: str
    class_count: int
    instance_count: int
    unary_count: int
    class_to_class_count: int
    max_out_degree: int
    acyclic: bool
    cycles: List[List[str]] = []
    diamonds: List[Dict[str, Any]] = []
    rewrite_rules: int = 0
    lemmas: int = 0
    goals: int = 0
