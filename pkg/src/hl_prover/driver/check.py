"""
File checking: parse, seal, analyse the instance graph, lint, then prove
every ``goal`` declaration and re-verify each proof trace.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from ..core.config import ConfigManager
from ..core.exceptions import HierarchyError, ParseError
from ..decide import as_prop
from ..hierarchy import Env, check_acyclic, load_env
from ..prooftrace import ProofTrace
from ..prooftrace.verify import verify
from ..rewriter import orient_check
from ..syntax import ClassAtom, Goal
from ..tactics import Tactic, TacticContext, get_default_tactics, tactics_for
from .lint import lint
from .reports import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, CheckReport, Diagnostic, GoalReport, Severity

logger = logging.getLogger(__name__)

CYCLE = "cycle"
ORIENT = "orient"


def tactic_options(config: Optional[ConfigManager] = None, **overrides: Any) -> Dict[str, Any]:
    """
    Flatten engine settings into the option dict tactics read.

    Values given in ``overrides`` win over the configuration; ``None``
    overrides are ignored.
    """
    config = config or ConfigManager(load_env=False)
    options: Dict[str, Any] = {
        "max_depth": config.get("resolver.max_depth"),
        "strategy": config.get("resolver.strategy"),
        "cache": config.get("resolver.cache"),
        "max_atoms": config.get("resolver.max_atoms"),
        "fuel": config.get("simp.fuel"),
        "exponent_limit": config.get("ring.exponent_limit"),
        "var_limit": config.get("linarith.var_limit"),
        "decide_exponent_limit": config.get("decide.exponent_limit"),
    }
    options.update({k: v for k, v in overrides.items() if v is not None})
    return options


@dataclass
class GoalOutcome:
    name: str
    proved: bool
    tactic: Optional[str] = None
    trace: Optional[ProofTrace] = None
    message: str = ""
    attempts: List[str] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_report(self) -> GoalReport:
        return GoalReport(name=self.name, tactic=self.tactic, proved=self.proved, message=self.message)


def _matches(trace: ProofTrace, goal: Goal) -> bool:
    if trace.goal == goal.statement:
        return True
    if isinstance(goal.statement, ClassAtom):
        return False
    return as_prop(trace.goal) == as_prop(goal.statement)


def _candidates(goal: Goal, tactic: Optional[str]) -> List[Tactic]:
    name = tactic or goal.tactic
    if name is None and goal.is_class_goal:
        name = "resolve"
    if name is None:
        return tactics_for(goal.statement)
    registry = get_default_tactics()
    if name not in registry:
        raise KeyError(name)
    return [registry[name]()]


def prove_goal(
    goal: Goal, env: Env, options: Optional[Dict[str, Any]] = None, tactic: Optional[str] = None
) -> GoalOutcome:
    """
    Prove one goal declaration.

    The tactic is ``tactic``, else the goal's annotation, else ``resolve`` for
    class goals, else every applicable tactic in priority order. A proof only
    counts once the verifier accepts its trace.
    """
    try:
        candidates = _candidates(goal, tactic)
    except KeyError as e:
        return GoalOutcome(goal.name, False, str(e.args[0]), message=f"unknown tactic '{e.args[0]}'")
    if not candidates:
        return GoalOutcome(goal.name, False, message="no tactic applies to this goal")

    context = TacticContext(env, goal.binders, goal.hypotheses, goal.default_sort, dict(options or {}))
    messages: List[str] = []
    attempts: List[str] = []
    for candidate in candidates:
        attempts.append(candidate.name)
        result = candidate.apply(goal.statement, context)
        if not result.proved:
            logger.debug(f"{goal.name}: {candidate.name} failed: {result.message}")
            messages.append(f"{candidate.name}: {result.message}")
            continue
        if not _matches(result.trace, goal):
            messages.append(f"{candidate.name}: trace proves a different statement")
            continue
        verdict = verify(result.trace, env)
        if not verdict:
            logger.warning(f"{goal.name}: {candidate.name} trace {verdict}")
            messages.append(f"{candidate.name}: trace {verdict}")
            continue
        logger.info(f"{goal.name}: proved by {candidate.name}")
        return GoalOutcome(goal.name, True, candidate.name, result.trace, "", attempts, result.metadata)

    tactic_name = candidates[0].name if len(candidates) == 1 else None
    return GoalOutcome(goal.name, False, tactic_name, None, "; ".join(messages), attempts)


def prove_goals(
    goals: Sequence[Goal], env: Env, options: Optional[Dict[str, Any]] = None, max_workers: int = 4
) -> List[GoalOutcome]:
    """Prove goals concurrently; results keep the order of ``goals``"""
    if not goals:
        return []
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        futures = [executor.submit(prove_goal, goal, env, options) for goal in goals]
        return [future.result() for future in futures]


def _position(env: Env, name: str) -> Dict[str, Optional[int]]:
    decl = env.declaration(name)
    position = decl.position if decl is not None else None
    return {
        "line": position.line if position else None,
        "column": position.column if position else None,
    }


def environment_diagnostics(
    env: Env, strict: bool = False, checks: Optional[Sequence[str]] = None
) -> List[Diagnostic]:
    """Cycle and orientation errors, then lint findings"""
    diagnostics: List[Diagnostic] = []
    report = check_acyclic(env)
    for cycle in report.cycles:
        path = " -> ".join(cycle + [cycle[0]])
        diagnostics.append(
            Diagnostic(
                severity=Severity.ERROR,
                code=CYCLE,
                declaration=cycle[0],
                message=f"instance cycle {path}",
                **_position(env, cycle[0]),
            )
        )
    for rule in env.rewrite_rules:
        result = orient_check(rule)
        if not result:
            diagnostics.append(
                Diagnostic(
                    severity=Severity.ERROR,
                    code=ORIENT,
                    declaration=rule.name,
                    message=result.reason or "",
                    **_position(env, rule.name),
                )
            )
    diagnostics.extend(finding.to_diagnostic(strict) for finding in lint(env, checks))
    return diagnostics


def _load_failure(file: str, error: Exception) -> CheckReport:
    line = getattr(error, "line", None)
    column = getattr(error, "column", None)
    message = getattr(error, "message", None) or str(error)
    code = "parse" if isinstance(error, ParseError) else "hierarchy"
    diagnostic = Diagnostic(severity=Severity.ERROR, code=code, message=message, line=line, column=column)
    return CheckReport(file=file, ok=False, exit_code=EXIT_USAGE, diagnostics=[diagnostic])


def check_source(
    source: str,
    file: str = "<input>",
    config: Optional[ConfigManager] = None,
    strict: Optional[bool] = None,
    **overrides: Any,
) -> CheckReport:
    """
    Check ``.hl`` source text.

    Exit codes: 0 when there are no errors and every goal is proved, 1 on a
    failed goal or an error diagnostic, 2 when the file does not load.
    """
    config = config or ConfigManager(load_env=False)
    if strict is None:
        strict = bool(config.get("lint.strict", False))
    try:
        env = load_env(source)
    except (ParseError, HierarchyError) as e:
        logger.error(f"{file}: {e}")
        return _load_failure(file, e)

    diagnostics = environment_diagnostics(env, strict, config.get("lint.checks"))
    options = tactic_options(config, **overrides)
    outcomes = prove_goals(env.goals, env, options, int(config.get("general.max_workers", 4)))
    goals = [outcome.to_report() for outcome in outcomes]

    failed = any(d.severity == Severity.ERROR for d in diagnostics) or not all(g.proved for g in goals)
    exit_code = EXIT_FAILURE if failed else EXIT_OK
    logger.info(f"{file}: {sum(g.proved for g in goals)}/{len(goals)} goal(s) proved, exit {exit_code}")
    return CheckReport(file=file, ok=not failed, exit_code=exit_code, diagnostics=diagnostics, goals=goals)


def check_file(
    path: Union[str, Path], config: Optional[ConfigManager] = None, strict: Optional[bool] = None, **overrides: Any
) -> CheckReport:
    path = Path(path)
    return check_source(path.read_text(encoding="utf-8"), str(path), config, strict, **overrides)
