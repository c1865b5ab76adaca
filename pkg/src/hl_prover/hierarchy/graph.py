"""
Instance-graph analysis.

An edge ``C -> D`` exists when some instance has head ``D(t)`` and ``C(t)`` in
its body, both classes unary and over the identical carrier pattern ``t``.
Parallel instances collapse into one edge.
"""

import logging
from typing import Dict, List

import networkx as nx
from pydantic import BaseModel

from ..core.exceptions import HierarchyError
from .env import Env

logger = logging.getLogger(__name__)


class CycleReport(BaseModel):
    acyclic: bool
    cycles: List[List[str]] = []


class Diamond(BaseModel):
    source: str
    target: str
    paths: int


class HierarchyStats(BaseModel):
    class_count: int = 0
    instance_count: int = 0
    unary_count: int = 0
    class_to_class_count: int = 0
    max_out_degree: int = 0


def instance_graph(env: Env) -> nx.DiGraph:
    graph = nx.DiGraph()
    for name, decl in env.classes.items():
        if decl.arity == 1:
            graph.add_node(name)
    for rule in env.instances:
        head = rule.head
        if len(head.args) != 1 or head.cls not in graph:
            continue
        for atom in rule.body:
            if len(atom.args) == 1 and atom.args == head.args and atom.cls in graph:
                graph.add_edge(atom.cls, head.cls)
    return graph


def _normalize_cycle(cycle: List[str], env: Env) -> List[str]:
    start = min(range(len(cycle)), key=lambda i: env.class_index(cycle[i]))
    return cycle[start:] + cycle[:start]


def check_acyclic(env: Env) -> CycleReport:
    """All elementary cycles of the instance graph, or ``acyclic``"""
    graph = instance_graph(env)
    cycles = [_normalize_cycle(list(c), env) for c in nx.simple_cycles(graph)]
    cycles.sort(key=lambda c: [env.class_index(n) for n in c])
    if cycles:
        logger.info(f"instance graph has {len(cycles)} cycle(s)")
    return CycleReport(acyclic=not cycles, cycles=cycles)


def path_counts(graph: nx.DiGraph, order: List[str]) -> Dict[str, Dict[str, int]]:
    """Number of distinct directed paths between every reachable pair"""
    counts: Dict[str, Dict[str, int]] = {}
    for source in graph.nodes:
        reach = {source: 1}
        for node in order:
            if node not in reach:
                continue
            for successor in graph.successors(node):
                reach[successor] = reach.get(successor, 0) + reach[node]
        del reach[source]
        counts[source] = reach
    return counts


def diamond_report(env: Env) -> List[Diamond]:
    """Class pairs joined by two or more distinct paths, with their path counts"""
    graph = instance_graph(env)
    if not nx.is_directed_acyclic_graph(graph):
        raise HierarchyError("diamond report needs an acyclic instance graph")
    order = list(nx.topological_sort(graph))
    counts = path_counts(graph, order)
    diamonds = [
        Diamond(source=source, target=target, paths=paths)
        for source, reach in counts.items()
        for target, paths in reach.items()
        if paths >= 2
    ]
    diamonds.sort(key=lambda d: (env.class_index(d.source), env.class_index(d.target)))
    return diamonds


def stats(env: Env) -> HierarchyStats:
    graph = instance_graph(env)
    class_to_class = 0
    for rule in env.instances:
        if len(rule.body) != 1 or len(rule.head.args) != 1:
            continue
        (atom,) = rule.body
        if len(atom.args) == 1 and atom.args == rule.head.args:
            class_to_class += 1
    return HierarchyStats(
        class_count=len(env.classes),
        instance_count=len(env.instances),
        unary_count=sum(1 for c in env.classes.values() if c.arity == 1),
        class_to_class_count=class_to_class,
        max_out_degree=max((d for _, d in graph.out_degree()), default=0),
    )


def reachable_classes(env: Env, cls: str) -> List[str]:
    """Classes implied by ``cls`` through the instance graph, in declaration order"""
    graph = instance_graph(env)
    if cls not in graph:
        return []
    found = nx.descendants(graph, cls)
    return sorted(found, key=env.class_index)
