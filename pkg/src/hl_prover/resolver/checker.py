"""Independent derivation checker; trusts only the environment's instance rules"""

from dataclasses import dataclass, field
from typing import List, Tuple

from ..hierarchy import Env
from ..syntax import ClassAtom
from ..syntax.sorts import sort_vars
from .query import Derivation


@dataclass
class CheckResult:
    ok: bool
    reasons: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _check(node: Derivation, goal: ClassAtom, env: Env, path: Tuple[int, ...], reasons: List[str]) -> None:
    where = f"at {list(path)}"
    if not goal.is_ground:
        reasons.append(f"not ground: {goal} {where}")
        return
    rule = env.instance(node.rule)
    if rule is None:
        reasons.append(f"unknown rule '{node.rule}' {where}")
        return
    head_vars = set()
    for sort in rule.head.args:
        head_vars |= sort_vars(sort)
    missing = sorted(head_vars - set(node.substitution))
    if missing:
        reasons.append(f"unbound variable {', '.join(missing)} in '{rule.name}' {where}")
        return
    if rule.head.substitute(node.substitution) != goal:
        reasons.append(f"head mismatch: '{rule.name}' does not prove {goal} {where}")
        return
    if len(node.children) != len(rule.body):
        reasons.append(
            f"arity mismatch: '{rule.name}' has {len(rule.body)} premise(s), "
            f"derivation gives {len(node.children)} {where}"
        )
        return
    for index, (child, atom) in enumerate(zip(node.children, rule.body)):
        _check(child, atom.substitute(node.substitution), env, path + (index,), reasons)


def check_derivation(derivation: Derivation, goal: ClassAtom, env: Env) -> CheckResult:
    """True iff every node instantiates a declared rule and the root proves ``goal``"""
    reasons: List[str] = []
    _check(derivation, goal, env, (), reasons)
    return CheckResult(not reasons, reasons)
