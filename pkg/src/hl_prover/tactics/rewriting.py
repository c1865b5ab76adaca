"""Tactics that rewrite the goal with environment rules: simp, dsimp, norm_cast."""

from typing import Callable, Optional, Sequence, Tuple

from ..hierarchy import Env
from ..prooftrace import HypothesisEvidence, ProofTrace, RewriteTrace, Terminal, embed_rewrite
from ..rewriter import DEFAULT_FUEL, norm_cast, select_rules, simp
from ..syntax import Rel, RewriteRule, RuleKind, Term
from .base import Tactic, TacticContext, TacticResult, is_reflexive

Normalizer = Callable[[Term], Tuple[Term, RewriteTrace]]


class RewritingTactic(Tactic):
    """Normalize the goal, then close it by reflexivity or by a hypothesis with the same normal form"""

    def rules(self, context: TacticContext) -> Sequence[RewriteRule]:
        return select_rules(context.env, context.option("simpset"))

    def normalizer(self, context: TacticContext) -> Normalizer:
        rules = self.rules(context)
        fuel = context.option("fuel", DEFAULT_FUEL)
        return lambda term: simp(term, rules, context.env, fuel)

    def run(self, goal: Rel, context: TacticContext) -> TacticResult:
        normalize = self.normalizer(context)
        final, rewrite = normalize(goal)
        steps = embed_rewrite(rewrite, goal)
        if is_reflexive(final):
            return self.proved(ProofTrace(goal, self.name, steps, Terminal.REFLEXIVITY), context, steps=len(steps))
        evidence = self._match_hypothesis(final, context, normalize)
        if evidence is not None:
            trace = ProofTrace(goal, self.name, steps, Terminal.HYPOTHESIS, evidence)
            return self.proved(trace, context, steps=len(steps), hypothesis=evidence.name)
        return self.failed(f"{self.name} left an open goal", steps=len(steps), normal_form=final)

    def _match_hypothesis(
        self, final: Term, context: TacticContext, normalize: Normalizer
    ) -> Optional[HypothesisEvidence]:
        for hypothesis in context.hypotheses:
            reached, rewrite = normalize(hypothesis.statement)
            if reached == final:
                return HypothesisEvidence(hypothesis.name, embed_rewrite(rewrite, hypothesis.statement))
        return None


class SimpTactic(RewritingTactic):
    @property
    def name(self) -> str:
        return "simp"

    @property
    def priority(self) -> int:
        return 20


class DsimpTactic(RewritingTactic):
    """Definitional unfolding only"""

    @property
    def name(self) -> str:
        return "dsimp"

    @property
    def priority(self) -> int:
        return 10

    def rules(self, context: TacticContext) -> Sequence[RewriteRule]:
        return context.env.rules_of_kind(RuleKind.DEF)


class NormCastTactic(RewritingTactic):
    @property
    def name(self) -> str:
        return "norm_cast"

    @property
    def priority(self) -> int:
        return 30

    def normalizer(self, context: TacticContext) -> Normalizer:
        env: Env = context.env
        fuel = context.option("fuel", DEFAULT_FUEL)
        return lambda formula: norm_cast(formula, env, fuel)
