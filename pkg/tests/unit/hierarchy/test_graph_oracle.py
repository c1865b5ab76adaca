import itertools
import random

import pytest

from hl_prover.core.exceptions import HierarchyError
from hl_prover.hierarchy import EnvBuilder, check_acyclic, diamond_report
from hl_prover.syntax import ClassAtom, ClassDecl, InstanceRule, arrow, sort_var

A, B = sort_var("a"), sort_var("b")


def build_env(nodes, edges, distractors=()):
    """One class per node, one ``head(a) <- body(a)`` instance per edge"""
    builder = EnvBuilder()
    for i in range(nodes):
        builder.add(ClassDecl(name=f"c{i}", params=("a",)))
    rules = [(ClassAtom(f"c{t}", (A,)), ClassAtom(f"c{s}", (A,))) for s, t in edges]
    # carriers differ, so these never become edges
    rules += [(ClassAtom(f"c{t}", (arrow(A, B),)), ClassAtom(f"c{s}", (A,))) for s, t in distractors]
    for index, (head, body) in enumerate(rules):
        builder.add(InstanceRule(name=f"r{index}", head=head, body=(body,)))
    return builder.seal()


def has_cycle(nodes, edges):
    """Colouring depth-first search"""
    successors = {n: [t for s, t in edges if s == n] for n in range(nodes)}
    state = {}

    def visit(node):
        state[node] = "open"
        for nxt in successors[node]:
            if state.get(nxt) == "open" or (nxt not in state and visit(nxt)):
                return True
        state[node] = "done"
        return False

    return any(node not in state and visit(node) for node in range(nodes))


def elementary_cycles(nodes, edges):
    """Every simple cycle, rotated to start at its smallest node"""
    edge_set = set(edges)
    found = []
    for size in range(1, nodes + 1):
        for members in itertools.combinations(range(nodes), size):
            first, rest = members[0], members[1:]
            for order in itertools.permutations(rest):
                cycle = (first,) + order
                if all((cycle[i], cycle[(i + 1) % size]) in edge_set for i in range(size)):
                    found.append([f"c{n}" for n in cycle])
    return sorted(found, key=lambda c: [int(n[1:]) for n in c])


def count_paths(edges, source, target):
    if source == target:
        return 1
    return sum(count_paths(edges, t, target) for s, t in edges if s == source)


def random_graph(rng):
    nodes = rng.randint(1, 8)
    pairs = [(s, t) for s in range(nodes) for t in range(nodes)]
    density = rng.choice((0.1, 0.2, 0.35))
    if rng.random() < 0.5:
        pairs = [(s, t) for s, t in pairs if s < t]
    edges = [p for p in pairs if rng.random() < density]
    distractors = rng.sample(pairs, min(len(pairs), rng.randint(0, 3)))
    return nodes, edges, distractors


def assert_matches(nodes, edges, distractors=()):
    env = build_env(nodes, edges, distractors)
    report = check_acyclic(env)
    cyclic = has_cycle(nodes, edges)
    edge_names = {(f"c{s}", f"c{t}") for s, t in edges}

    assert report.acyclic == (not cyclic)
    assert report.cycles == elementary_cycles(nodes, edges)
    for cycle in report.cycles:
        assert all((cycle[i], cycle[(i + 1) % len(cycle)]) in edge_names for i in range(len(cycle)))

    if cyclic:
        with pytest.raises(HierarchyError):
            diamond_report(env)
        return
    expected = {
        (f"c{s}", f"c{t}"): count_paths(edges, s, t)
        for s in range(nodes)
        for t in range(nodes)
        if s != t and count_paths(edges, s, t) >= 2
    }
    assert {(d.source, d.target): d.paths for d in diamond_report(env)} == expected


class TestGraphOracle:
    """Test cycle and diamond analysis against brute-force graph enumeration"""

    @pytest.mark.parametrize("mask", range(512))
    def test_every_graph_on_three_classes(self, mask):
        """Test all 512 edge sets over three classes, self-loops included"""
        pairs = [(s, t) for s in range(3) for t in range(3)]
        edges = [pair for bit, pair in enumerate(pairs) if mask >> bit & 1]

        assert_matches(3, edges)

    @pytest.mark.parametrize("seed", range(200))
    def test_random_graphs(self, seed):
        """Test random graphs of up to eight classes with non-edge instances mixed in"""
        assert_matches(*random_graph(random.Random(seed)))
