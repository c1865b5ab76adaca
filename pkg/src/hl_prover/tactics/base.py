import dataclasses
import logging
from abc import abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..core.base import Strategy
from ..core.exceptions import HLProverError
from ..hierarchy import Env
from ..prooftrace import ProofTrace
from ..syntax import Binder, Hypothesis, Rel, Sort
from ..syntax.declarations import GoalStatement

logger = logging.getLogger(__name__)

REFLEXIVE = ("=", "≤")


@dataclass
class TacticContext:
    """Everything a tactic sees besides the goal statement"""
    env: Env
    binders: Tuple[Binder, ...] = ()
    hypotheses: Tuple[Hypothesis, ...] = ()
    default_sort: Optional[Sort] = None
    options: Dict[str, Any] = field(default_factory=dict)

    def option(self, name: str, default: Any = None) -> Any:
        value = self.options.get(name)
        return default if value is None else value

    def stamp(self, trace: ProofTrace) -> ProofTrace:
        """Attach the goal's binders, hypotheses and default sort"""
        return dataclasses.replace(
            trace, binders=self.binders, hypotheses=self.hypotheses, default_sort=self.default_sort
        )


@dataclass
class TacticResult:
    tactic: str
    proved: bool
    trace: Optional[ProofTrace] = None
    message: str = ""
    metadata: Dict[str, Any] = field(default_factory=dict)


def is_reflexive(statement: Any) -> bool:
    return isinstance(statement, Rel) and statement.symbol in REFLEXIVE and statement.lhs == statement.rhs


class Tactic(Strategy):
    """Base class for goal tactics"""

    @abstractmethod
    def run(self, goal: GoalStatement, context: TacticContext) -> TacticResult:
        """
        Try to close ``goal``.

        Args:
            goal: Class atom, relation or decidable proposition
            context: Environment, hypotheses and options

        Returns:
            TacticResult with the trace when proved
        """
        pass

    def apply(self, goal: GoalStatement, context: TacticContext, *args: Any, **kwargs: Any) -> TacticResult:
        """Run, turning domain errors into failed results"""
        if not self.supports(goal):
            return self.failed(f"{self.name} does not apply to this goal")
        try:
            return self.run(goal, context)
        except HLProverError as e:
            logger.debug(f"{self.name}: {type(e).__name__}: {e}")
            return self.failed(str(e), error_type=type(e).__name__)

    def proved(self, trace: ProofTrace, context: TacticContext, **metadata: Any) -> TacticResult:
        return TacticResult(self.name, True, context.stamp(trace), "", metadata)

    def failed(self, message: str, **metadata: Any) -> TacticResult:
        return TacticResult(self.name, False, None, message, metadata)

    def supports(self, goal: Any) -> bool:
        return isinstance(goal, Rel)

    @staticmethod
    def hypothesis_relations(context: TacticContext) -> List[Rel]:
        return [h.statement for h in context.hypotheses]
