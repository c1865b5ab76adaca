"""
Generators for benchmark hierarchies.

``chain(n)`` is a straight line of ``n + 1`` classes with a fact at the
bottom; ``diamond_ladder(n)`` stacks ``n`` diamonds over ``2n + 2`` classes
with no facts, so a backward search for the top class fails only after
visiting every path.
"""

import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from jinja2 import Template

from ..core.exceptions import HierarchyError
from ..syntax import ClassAtom, parse_class_atom
from .env import Env, load_env

SHAPES = ("chain", "diamond-ladder")

HIERARCHY_TEMPLATE = """# generated: {{ shape }} n={{ n }}{% if seed is not none %} seed={{ seed }}{% endif %}

{% for cls in classes %}
/-- Generated class {{ cls }}. -/
class {{ cls }} (a)
{% endfor %}

{% for source, target in edges %}
instance {{ source }}_to_{{ target }} : {{ target }}(a) <- {{ source }}(a)
{% endfor %}
{% for cls in facts %}
instance {{ cls }}_alpha : {{ cls }}(α)
{% endfor %}
"""


@dataclass(frozen=True)
class GeneratedShape:
    shape: str
    n: int
    source: str
    query: str

    def env(self) -> Env:
        return load_env(self.source)

    def query_atom(self, env: Optional[Env] = None) -> ClassAtom:
        return parse_class_atom(self.query, env)


def _render(
    shape: str,
    n: int,
    classes: List[str],
    edges: List[Tuple[str, str]],
    facts: List[str],
    seed: Optional[int],
) -> str:
    if seed is not None:
        edges = list(edges)
        random.Random(seed).shuffle(edges)
    template = Template(HIERARCHY_TEMPLATE, trim_blocks=True, lstrip_blocks=True)
    return template.render(shape=shape, n=n, classes=classes, edges=edges, facts=facts, seed=seed)


def chain(n: int, seed: Optional[int] = None) -> GeneratedShape:
    if n < 0:
        raise HierarchyError("chain length must be non-negative")
    classes = [f"c{i}" for i in range(n + 1)]
    edges = [(classes[i], classes[i + 1]) for i in range(n)]
    source = _render("chain", n, classes, edges, [classes[0]], seed)
    return GeneratedShape("chain", n, source, f"{classes[-1]}(α)")


def diamond_ladder(n: int, seed: Optional[int] = None) -> GeneratedShape:
    if n < 0:
        raise HierarchyError("ladder size must be non-negative")
    a = [f"a{i}" for i in range(n + 1)]
    b = [f"b{i}" for i in range(n + 1)]
    edges: List[Tuple[str, str]] = []
    for i in range(n):
        edges += [(a[i], a[i + 1]), (b[i], a[i + 1]), (a[i], b[i + 1]), (b[i], b[i + 1])]
    classes = [c for pair in zip(a, b) for c in pair]
    source = _render("diamond-ladder", n, classes, edges, [], seed)
    return GeneratedShape("diamond-ladder", n, source, f"{a[-1]}(α)")


def generate(shape: str, n: int, seed: Optional[int] = None) -> GeneratedShape:
    if shape == "chain":
        return chain(n, seed)
    if shape in ("diamond-ladder", "diamond_ladder"):
        return diamond_ladder(n, seed)
    raise HierarchyError(f"unknown shape '{shape}', expected one of {', '.join(SHAPES)}")
