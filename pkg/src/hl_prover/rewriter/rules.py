"""Rewrite-rule well-formedness and rule-set selection"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from ..core.exceptions import RewriteError
from ..hierarchy import Env
from ..syntax import Op, RewriteRule, RuleKind, Var, match
from ..syntax.terms import free_vars, iter_subterms, term_sort_vars

logger = logging.getLogger(__name__)

DEFAULT_SIMPSET = "default"


@dataclass(frozen=True)
class OrientResult:
    """``ok`` or a rejection reason; falsy when rejected"""
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else f"reject: {self.reason}"


def orient_check(rule: RewriteRule) -> OrientResult:
    if isinstance(rule.lhs, Var):
        return OrientResult(False, f"bare-variable LHS '{rule.lhs.name}' matches every term")
    if isinstance(rule.lhs, Op) and rule.lhs.symbol == "app" and isinstance(rule.lhs.args[0], Var):
        return OrientResult(False, f"pattern head is the variable '{rule.lhs.args[0].name}'")

    lhs_vars = free_vars(rule.lhs)
    fresh = [v for v in free_vars(rule.rhs) if v not in lhs_vars]
    if fresh:
        return OrientResult(False, f"fresh variable on RHS: {', '.join(fresh)}")

    lhs_sorts = set(term_sort_vars(rule.lhs))
    for atom in rule.conditions:
        unbound = sorted(set(atom.variables()) - lhs_sorts)
        if unbound:
            return OrientResult(False, f"condition {atom} mentions {', '.join(unbound)} not bound by the LHS")
    rhs_sorts = set(term_sort_vars(rule.rhs)) - lhs_sorts
    if rhs_sorts:
        return OrientResult(False, f"fresh sort variable on RHS: {', '.join(sorted(rhs_sorts))}")
    return OrientResult(True)


def loop_risk(rule: RewriteRule) -> bool:
    """True when the LHS matches a subterm of the RHS, so the rule can fire forever"""
    for _, sub in iter_subterms(rule.rhs):
        if isinstance(sub, Var):
            continue
        if match(rule.lhs, sub) is not None:
            return True
    return False


def usable_rules(rules: Iterable[RewriteRule]) -> Tuple[RewriteRule, ...]:
    """Drop rules that fail ``orient_check``, logging each one"""
    kept: List[RewriteRule] = []
    for rule in rules:
        result = orient_check(rule)
        if result:
            kept.append(rule)
        else:
            logger.warning(f"skipping rule '{rule.name}': {result.reason}")
    return tuple(kept)


def select_rules(env: Env, simpset: Optional[str] = None, kinds: Sequence[RuleKind] = ()) -> Tuple[RewriteRule, ...]:
    """
    Pick a rule set in declaration order.

    Args:
        env: Sealed environment
        simpset: ``default`` (every simp and def rule) or comma-separated rule names
        kinds: Restrict the default set to these kinds

    Returns:
        Tuple of rewrite rules
    """
    if not simpset or simpset == DEFAULT_SIMPSET:
        return env.rules_of_kind(*(kinds or (RuleKind.SIMP, RuleKind.DEF)))
    rules: List[RewriteRule] = []
    for name in (n.strip() for n in simpset.split(",")):
        if not name:
            continue
        rule = env.rewrite_rule(name)
        if rule is None:
            raise RewriteError(f"unknown rewrite rule '{name}'")
        rules.append(rule)
    return tuple(rules)
