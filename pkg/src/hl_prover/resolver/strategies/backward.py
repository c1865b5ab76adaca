"""
Backward (goal-directed) instance search.

Depth-first over the instance rules in search order, solving body atoms left
to right. A goal equal to one of its ancestors is pruned; a goal deeper than
``max_depth`` is truncated. Failures are cached per query only when their
subtree saw neither a prune nor a truncation, so the cache never changes the
outcome.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from ...hierarchy import Env
from ...syntax import ClassAtom
from ..query import Derivation, Outcome, Query, ResolutionResult, SearchMetrics
from .base import ResolutionStrategy

logger = logging.getLogger(__name__)


@dataclass
class _Run:
    env: Env
    max_depth: int
    use_cache: bool
    metrics: SearchMetrics = field(default_factory=SearchMetrics)
    successes: Dict[ClassAtom, Derivation] = field(default_factory=dict)
    failures: Set[ClassAtom] = field(default_factory=set)
    truncated: bool = False
    pruned: bool = False
    dead_ends: int = 0

    def solve(self, goal: ClassAtom, depth: int, path: List[ClassAtom]) -> Tuple[Optional[Derivation], bool]:
        """Returns the derivation (or None) and whether the subtree was cut short"""
        if depth > self.max_depth:
            self.truncated = True
            return None, True
        if goal in path:
            logger.debug(f"cycle: {goal} already on the current path")
            self.pruned = True
            return None, True
        if self.use_cache:
            cached = self.successes.get(goal)
            if cached is not None and depth + cached.depth - 1 <= self.max_depth:
                self.metrics.cache_hits += 1
                return cached, False
            if goal in self.failures:
                self.metrics.cache_hits += 1
                return None, False

        self.metrics.nodes_expanded += 1
        self.metrics.max_depth_reached = max(self.metrics.max_depth_reached, depth)
        path.append(goal)
        cut = False
        matched = False
        result: Optional[Derivation] = None
        for rule in self.env.rules_for(goal.cls):
            bindings = rule.head.match(goal)
            if bindings is None:
                continue
            matched = True
            children: List[Derivation] = []
            for atom in rule.body:
                child, child_cut = self.solve(atom.substitute(bindings), depth + 1, path)
                cut = cut or child_cut
                if child is None:
                    break
                children.append(child)
            else:
                result = Derivation(rule.name, bindings, tuple(children))
                break
        path.pop()

        if not matched:
            self.dead_ends += 1
        if self.use_cache:
            if result is not None:
                self.successes[goal] = result
            elif not cut:
                self.failures.add(goal)
        return result, cut and result is None


class BackwardStrategy(ResolutionStrategy):
    """Prolog-style backtracking search from the goal towards the facts"""

    @property
    def name(self) -> str:
        return "backward"

    @property
    def priority(self) -> int:
        return 10

    def search(self, query: Query, env: Env) -> ResolutionResult:
        start = time.perf_counter_ns()
        run = _Run(env, query.config.max_depth, query.config.cache)
        derivation, _ = run.solve(query.atom, 1, [])
        metrics = run.metrics
        if derivation is not None:
            metrics.outcome = Outcome.SUCCESS
        elif run.truncated:
            metrics.outcome = Outcome.DEPTH_EXCEEDED
        elif run.pruned and run.dead_ends == 0:
            metrics.outcome = Outcome.CYCLE_DETECTED
        else:
            metrics.outcome = Outcome.FAILURE
        metrics.elapsed_ns = time.perf_counter_ns() - start
        logger.debug(
            f"backward {query.atom}: {metrics.outcome.value}, {metrics.nodes_expanded} expanded, "
            f"{metrics.cache_hits} cache hits"
        )
        return ResolutionResult(derivation, metrics)
