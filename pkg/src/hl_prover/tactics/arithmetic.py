"""Arithmetic tactics: ring, abel, norm_num, linarith."""

from ..arith import EXPONENT_LIMIT, AbelEngine, FalseProp, NotEqual, RingEngine, norm_num_prove
from ..linarith import VAR_LIMIT, Unknown, linarith_goal
from ..syntax import Rel
from .base import Tactic, TacticContext, TacticResult


def _is_equation(goal) -> bool:
    return isinstance(goal, Rel) and goal.symbol == "="


class RingTactic(Tactic):
    """Equal normal forms in commutative (semi)rings"""

    @property
    def name(self) -> str:
        return "ring"

    @property
    def priority(self) -> int:
        return 40

    def supports(self, goal) -> bool:
        return _is_equation(goal)

    def run(self, goal: Rel, context: TacticContext) -> TacticResult:
        engine = RingEngine(context.env, int(context.option("exponent_limit", EXPONENT_LIMIT)))
        outcome = engine.prove_eq(goal)
        if isinstance(outcome, NotEqual):
            return self.failed(str(outcome), lhs_form=outcome.lhs, rhs_form=outcome.rhs)
        return self.proved(outcome, context, steps=len(outcome.steps))


class AbelTactic(Tactic):
    """Equal normal forms in additive commutative groups and monoids"""

    @property
    def name(self) -> str:
        return "abel"

    @property
    def priority(self) -> int:
        return 45

    def supports(self, goal) -> bool:
        return _is_equation(goal)

    def run(self, goal: Rel, context: TacticContext) -> TacticResult:
        outcome = AbelEngine(context.env).prove_eq(goal)
        if isinstance(outcome, NotEqual):
            return self.failed(str(outcome), lhs_form=outcome.lhs, rhs_form=outcome.rhs)
        return self.proved(outcome, context, steps=len(outcome.steps))


class NormNumTactic(Tactic):
    @property
    def name(self) -> str:
        return "norm_num"

    @property
    def priority(self) -> int:
        return 15

    def run(self, goal: Rel, context: TacticContext) -> TacticResult:
        outcome = norm_num_prove(goal, int(context.option("exponent_limit", EXPONENT_LIMIT)))
        if isinstance(outcome, FalseProp):
            return self.failed(str(outcome), lhs=outcome.lhs, rhs=outcome.rhs)
        return self.proved(outcome, context, facts=len(outcome.evidence.steps))


class LinarithTactic(Tactic):
    """Refutes the negated goal together with the goal's hypotheses"""

    @property
    def name(self) -> str:
        return "linarith"

    @property
    def priority(self) -> int:
        return 50

    def run(self, goal: Rel, context: TacticContext) -> TacticResult:
        outcome = linarith_goal(
            self.hypothesis_relations(context),
            goal,
            context.env,
            int(context.option("var_limit", VAR_LIMIT)),
            context.binders,
            context.hypotheses,
        )
        if isinstance(outcome, Unknown):
            return self.failed(str(outcome), witness={k: str(v) for k, v in outcome.witness.items()})
        return self.proved(outcome, context, certificates=len(outcome.evidence.certificates))
