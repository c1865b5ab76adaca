"""
Bidirectional instance search.

A demand pass walks backward from the query once, memoizing every ground
atom some rule could need and the rule instantiations that would produce it.
Saturation then runs forward from the facts over those instantiations with
an agenda, each atom derived at most once, and the derivation is rebuilt
from the recorded justifications.
"""

import logging
import time
from collections import deque
from typing import Deque, Dict, List, Optional, Tuple

from ...core.exceptions import ResolutionError
from ...hierarchy import Env, check_acyclic
from ...syntax import ClassAtom, InstanceRule, Sort
from ..query import Derivation, Outcome, Query, ResolutionResult, SearchMetrics
from .base import ResolutionStrategy

logger = logging.getLogger(__name__)

_Instantiation = Tuple[InstanceRule, Dict[str, Sort], Tuple[ClassAtom, ...], ClassAtom]


def _demand(env: Env, query: ClassAtom, max_atoms: int) -> Tuple[List[_Instantiation], int]:
    """Rule instantiations reachable backward from the query, in discovery order, and the number of atoms demanded"""
    seen = {query}
    queue: Deque[ClassAtom] = deque([query])
    instantiations: List[_Instantiation] = []
    while queue:
        goal = queue.popleft()
        for rule in env.rules_for(goal.cls):
            bindings = rule.head.match(goal)
            if bindings is None:
                continue
            body = tuple(atom.substitute(bindings) for atom in rule.body)
            instantiations.append((rule, bindings, body, goal))
            for atom in body:
                if atom not in seen:
                    seen.add(atom)
                    if len(seen) > max_atoms:
                        raise ResolutionError(f"more than {max_atoms} atoms demanded by {query}")
                    queue.append(atom)
    return instantiations, len(seen)


def saturate(
    instantiations: List[_Instantiation],
) -> Dict[ClassAtom, Tuple[str, Dict[str, Sort], Tuple[ClassAtom, ...]]]:
    """Forward closure; maps each derived atom to the instantiation that first derived it"""
    waiting: Dict[ClassAtom, List[int]] = {}
    remaining: List[int] = []
    agenda: Deque[int] = deque()
    for index, (_, _, body, _) in enumerate(instantiations):
        distinct = set(body)
        remaining.append(len(distinct))
        for atom in distinct:
            waiting.setdefault(atom, []).append(index)
        if not distinct:
            agenda.append(index)

    justification: Dict[ClassAtom, Tuple[str, Dict[str, Sort], Tuple[ClassAtom, ...]]] = {}
    while agenda:
        rule, bindings, body, head = instantiations[agenda.popleft()]
        if head in justification:
            continue
        justification[head] = (rule.name, bindings, body)
        for index in waiting.get(head, ()):
            remaining[index] -= 1
            if remaining[index] == 0:
                agenda.append(index)
    return justification


def _rebuild(atom: ClassAtom, justification) -> Derivation:
    rule, bindings, body = justification[atom]
    return Derivation(rule, bindings, tuple(_rebuild(a, justification) for a in body))


class BidirectionalStrategy(ResolutionStrategy):
    """Demand-restricted forward saturation; refuses cyclic environments"""

    @property
    def name(self) -> str:
        return "bidir"

    @property
    def priority(self) -> int:
        return 20

    def supports(self, env: Env) -> bool:
        return check_acyclic(env).acyclic

    def search(self, query: Query, env: Env) -> ResolutionResult:
        start = time.perf_counter_ns()
        metrics = SearchMetrics()
        if not self.supports(env):
            logger.warning("bidirectional search refused: instance graph has cycles")
            metrics.outcome = Outcome.CYCLE_DETECTED
            metrics.elapsed_ns = time.perf_counter_ns() - start
            return ResolutionResult(None, metrics)

        instantiations, demanded = _demand(env, query.atom, query.config.max_atoms)
        justification = saturate(instantiations)
        derivation: Optional[Derivation] = None
        metrics.nodes_expanded = demanded
        if query.atom in justification:
            derivation = _rebuild(query.atom, justification)
            metrics.outcome = Outcome.SUCCESS
            metrics.max_depth_reached = derivation.depth
        else:
            metrics.outcome = Outcome.FAILURE
        metrics.elapsed_ns = time.perf_counter_ns() - start
        logger.debug(f"bidir {query.atom}: {metrics.outcome.value}, {metrics.nodes_expanded} atoms demanded, {len(justification)} derived")
        return ResolutionResult(derivation, metrics)
