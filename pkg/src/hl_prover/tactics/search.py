"""Tactics that close goals by search or evaluation: resolve, dec_trivial."""

from ..arith import EXPONENT_LIMIT
from ..decide import Refuted, decide_goal
from ..prooftrace import ProofTrace, Terminal
from ..resolver import Query, SearchConfig, resolve
from ..syntax import ClassAtom, Rel
from ..syntax.props import And, BoundedForall, Implies, Not, Or, RelLit
from .base import Tactic, TacticContext, TacticResult

PROPOSITIONS = (Rel, RelLit, BoundedForall, And, Or, Not, Implies)


class ResolveTactic(Tactic):
    """Instance resolution for class goals"""

    @property
    def name(self) -> str:
        return "resolve"

    @property
    def priority(self) -> int:
        return 0

    def supports(self, goal) -> bool:
        return isinstance(goal, ClassAtom)

    def run(self, goal: ClassAtom, context: TacticContext) -> TacticResult:
        config = SearchConfig.from_dict({k: v for k, v in context.options.items() if v is not None})
        result = resolve(Query(goal, config), context.env)
        metrics = result.metrics.model_dump(mode="json")
        if not result.success:
            return self.failed(f"{goal}: {result.metrics.outcome.value}", metrics=metrics)
        trace = ProofTrace(goal, self.name, [], Terminal.DERIVATION, result.derivation)
        return self.proved(trace, context, metrics=metrics)


class DecTrivialTactic(Tactic):
    """Evaluates closed decidable propositions"""

    @property
    def name(self) -> str:
        return "dec_trivial"

    @property
    def priority(self) -> int:
        return 5

    def supports(self, goal) -> bool:
        return isinstance(goal, PROPOSITIONS)

    def run(self, goal, context: TacticContext) -> TacticResult:
        outcome = decide_goal(goal, int(context.option("decide_exponent_limit", EXPONENT_LIMIT)))
        if isinstance(outcome, Refuted):
            return self.failed(str(outcome), nodes=outcome.evidence.size())
        return self.proved(outcome, context, nodes=outcome.evidence.size())
