"""
Sorts of the term language.

Carrier sorts are the types classes range over (``nat``, ``int``, ``α``, user
``sort`` declarations); arrow sorts are function spaces; ``Prop`` is the sort
of relations. Sort variables only occur in patterns: instance heads, rule
binders and operator signatures.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, Optional, Set


class SortKind(Enum):
    """Kind of a sort"""
    CARRIER = "carrier"
    ARROW = "arrow"
    PROP = "prop"
    VARIABLE = "variable"


@dataclass(frozen=True)
class Sort:
    """A sort; arrow sorts carry domain and codomain"""
    name: str
    kind: SortKind = SortKind.CARRIER
    domain: Optional["Sort"] = None
    codomain: Optional["Sort"] = None

    def __str__(self) -> str:
        return format_sort(self)

    @property
    def is_arrow(self) -> bool:
        return self.kind == SortKind.ARROW

    @property
    def is_variable(self) -> bool:
        return self.kind == SortKind.VARIABLE

    @property
    def is_ground(self) -> bool:
        return not any(s.is_variable for s in iter_sorts(self))


def carrier(name: str) -> Sort:
    return Sort(name, SortKind.CARRIER)


def sort_var(name: str) -> Sort:
    return Sort(name, SortKind.VARIABLE)


def arrow(domain: Sort, codomain: Sort) -> Sort:
    return Sort("->", SortKind.ARROW, domain, codomain)


PROP = Sort("Prop", SortKind.PROP)
NAT = carrier("nat")
INT = carrier("int")
RAT = carrier("rat")
REAL = carrier("real")
ALPHA = carrier("α")

PRELUDE_SORTS = (NAT, INT, RAT, REAL, ALPHA)

SORT_ALIASES: Dict[str, str] = {
    "ℕ": "nat",
    "ℤ": "int",
    "ℚ": "rat",
    "ℝ": "real",
    "Z": "int",
    "Q": "rat",
    "alpha": "α",
}


def iter_sorts(sort: Sort) -> Iterator[Sort]:
    """Pre-order walk over a sort and its components"""
    yield sort
    if sort.is_arrow:
        yield from iter_sorts(sort.domain)
        yield from iter_sorts(sort.codomain)


def sort_vars(sort: Sort) -> Set[str]:
    return {s.name for s in iter_sorts(sort) if s.is_variable}


def subsorts(sort: Sort) -> Set[Sort]:
    """All ground component sorts, the sort itself included"""
    return {s for s in iter_sorts(sort) if s.is_ground}


def match_sort(pattern: Sort, sort: Sort, bindings: Dict[str, Sort]) -> bool:
    """
    One-way match of a sort pattern, extending ``bindings`` in place.

    Returns False (leaving partial bindings behind) on mismatch; callers copy
    the dict first when they need to backtrack.
    """
    if pattern.is_variable:
        bound = bindings.get(pattern.name)
        if bound is None:
            bindings[pattern.name] = sort
            return True
        return bound == sort
    if pattern.kind != sort.kind:
        return False
    if pattern.is_arrow:
        return match_sort(pattern.domain, sort.domain, bindings) and match_sort(
            pattern.codomain, sort.codomain, bindings
        )
    return pattern.name == sort.name


def substitute_sort(sort: Sort, bindings: Dict[str, Sort]) -> Sort:
    if sort.is_variable:
        return bindings.get(sort.name, sort)
    if sort.is_arrow:
        return arrow(substitute_sort(sort.domain, bindings), substitute_sort(sort.codomain, bindings))
    return sort


def format_sort(sort: Sort, mark_variables: bool = False) -> str:
    """
    Render a sort; arrows are right-associative.

    With ``mark_variables`` sort variables print as ``'a`` so that a carrier
    and a variable of the same name stay distinct in JSON.
    """
    if sort.is_arrow:
        domain = format_sort(sort.domain, mark_variables)
        if sort.domain.is_arrow:
            domain = f"({domain})"
        return f"{domain} -> {format_sort(sort.codomain, mark_variables)}"
    if sort.is_variable and mark_variables:
        return f"'{sort.name}"
    return sort.name


def atomic_sort(sort: Sort) -> str:
    """Render a sort, parenthesised when it is an arrow"""
    text = format_sort(sort)
    return f"({text})" if sort.is_arrow else text


def parse_marked_sort(text: str) -> Sort:
    """Inverse of ``format_sort(..., mark_variables=True)``"""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    sort, rest = _parse_sort_tokens(tokens)
    if rest:
        raise ValueError(f"trailing input in sort: {text!r}")
    return sort


def _parse_sort_tokens(tokens):
    left, rest = _parse_sort_atom(tokens)
    if rest and rest[0] == "->":
        right, rest = _parse_sort_tokens(rest[1:])
        return arrow(left, right), rest
    return left, rest


def _parse_sort_atom(tokens):
    if not tokens:
        raise ValueError("unexpected end of sort")
    head, rest = tokens[0], tokens[1:]
    if head == "(":
        inner, rest = _parse_sort_tokens(rest)
        if not rest or rest[0] != ")":
            raise ValueError("unbalanced parentheses in sort")
        return inner, rest[1:]
    if head.startswith("'"):
        return sort_var(head[1:]), rest
    if head == "Prop":
        return PROP, rest
    return carrier(head), rest
