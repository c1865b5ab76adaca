"""
Directional rewriting to a normal form.

Traversal is innermost-leftmost: the children of a subterm are normalized
left to right before rules are tried at the subterm itself; after a rewrite
at a position the new subterm is normalized again, and control returns to
the parent, which tries its rules once its children are normal. Rules are
tried in rule-set order and the first match fires.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..core.exceptions import FuelExhaustedError
from ..hierarchy import Env
from ..prooftrace import RewriteStep, RewriteTrace
from ..resolver import Query, SearchConfig, resolve_backward
from ..syntax import ClassAtom, RewriteRule, RuleKind, Substitution, Term, instantiate, match
from ..syntax.terms import children, with_children
from .rules import usable_rules

logger = logging.getLogger(__name__)

DEFAULT_FUEL = 10000
CONDITION_DEPTH = 8

Discharger = Callable[[ClassAtom], bool]
Guard = Callable[[RewriteRule, Substitution, Term], bool]


def resolver_discharger(env: Env, max_depth: int = CONDITION_DEPTH) -> Discharger:
    """Side conditions are class atoms proved by backward search at a small depth"""
    cache: Dict[ClassAtom, bool] = {}

    def discharge(atom: ClassAtom) -> bool:
        if atom not in cache:
            if not atom.is_ground:
                cache[atom] = False
            else:
                query = Query(atom, SearchConfig(max_depth=max_depth, strategy="backward"))
                cache[atom] = resolve_backward(query, env).success
            logger.debug(f"condition {atom}: {'discharged' if cache[atom] else 'not discharged'}")
        return cache[atom]

    return discharge


@dataclass
class _Rewriter:
    rules: Tuple[RewriteRule, ...]
    fuel: int
    discharge: Optional[Discharger]
    guard: Optional[Guard]
    initial: Term
    steps: List[RewriteStep] = field(default_factory=list)

    def step_at_root(self, term: Term) -> Optional[Tuple[RewriteRule, Substitution, Term]]:
        for rule in self.rules:
            subst = match(rule.lhs, term)
            if subst is None:
                continue
            if rule.conditions:
                if self.discharge is None:
                    continue
                if not all(self.discharge(atom.substitute(subst.sorts)) for atom in rule.conditions):
                    continue
            if self.guard is not None and not self.guard(rule, subst, term):
                continue
            return rule, subst, instantiate(rule.rhs, subst)
        return None

    def normalize(self, term: Term, position: Tuple[int, ...]) -> Term:
        kids = children(term)
        if kids:
            term = with_children(
                term, tuple(self.normalize(kid, position + (i,)) for i, kid in enumerate(kids))
            )
        while True:
            fired = self.step_at_root(term)
            if fired is None:
                return term
            rule, subst, result = fired
            if len(self.steps) >= self.fuel:
                raise self.exhausted()
            self.steps.append(RewriteStep(rule.name, position, subst, term, result))
            kids = children(result)
            if kids:
                result = with_children(
                    result, tuple(self.normalize(kid, position + (i,)) for i, kid in enumerate(kids))
                )
            term = result

    def exhausted(self) -> FuelExhaustedError:
        window = self.steps[-min(len(self.steps), 64):]
        counts = Counter(step.rule for step in window)
        looping = [name for name, _ in counts.most_common()]
        return FuelExhaustedError(
            f"fuel of {self.fuel} steps exhausted; rules still firing: {', '.join(looping)}",
            trace=RewriteTrace(self.initial, list(self.steps)),
            looping_rules=looping,
        )


def simp(
    term: Term,
    rules: Sequence[RewriteRule],
    env: Optional[Env] = None,
    fuel: int = DEFAULT_FUEL,
    discharge: Optional[Discharger] = None,
    guard: Optional[Guard] = None,
) -> Tuple[Term, RewriteTrace]:
    """
    Rewrite ``term`` exhaustively with ``rules``.

    Args:
        term: Term or relation to simplify
        rules: Rule set, tried in order; rules failing orient_check are skipped
        env: Environment used to discharge class conditions
        fuel: Maximum number of rewrite steps
        discharge: Condition prover; defaults to backward resolution in ``env``
        guard: Extra veto on individual rule applications

    Returns:
        The normal form and the trace that produced it

    Raises:
        FuelExhaustedError: Fuel ran out; carries the partial trace
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    if discharge is None and env is not None:
        discharge = resolver_discharger(env)
    rewriter = _Rewriter(usable_rules(rules), fuel, discharge, guard, term)
    result = rewriter.normalize(term, ())
    logger.debug(f"simp: {len(rewriter.steps)} step(s)")
    return result, RewriteTrace(term, rewriter.steps)


def dsimp(term: Term, env: Env, fuel: int = DEFAULT_FUEL) -> Term:
    """Normal form under the definitional rules of ``env``"""
    result, _ = simp(term, env.rules_of_kind(RuleKind.DEF), env, fuel)
    return result
