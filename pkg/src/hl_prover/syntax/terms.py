"""
First-order terms over sorts.

A term is one of ``Var``, ``Op``, ``Numeral``, ``Coerce`` or ``Rel``. All term
classes are frozen dataclasses, so structural equality and hashing come for
free and terms can key caches. Positions are tuples of child indices from
the root.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .sorts import PROP, Sort, format_sort, match_sort, sort_vars, substitute_sort

Position = Tuple[int, ...]

RELATION_SYMBOLS = ("=", "≤", "<", "≠", "∣")


@dataclass(frozen=True)
class Var:
    name: str
    sort: Sort

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Op:
    symbol: str
    args: Tuple["Term", ...]
    sort: Sort


@dataclass(frozen=True)
class Numeral:
    """Natural-number literal as little-endian bits"""
    bits: Tuple[int, ...]
    sort: Sort

    def __post_init__(self):
        if not self.bits or any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"invalid numeral bits {self.bits!r}")
        if len(self.bits) > 1 and self.bits[-1] == 0:
            raise ValueError(f"non-canonical numeral bits {self.bits!r}")

    @classmethod
    def of_int(cls, value: int, sort: Sort) -> "Numeral":
        if value < 0:
            raise ValueError("numerals are non-negative; use neg for negative literals")
        return cls(int_to_bits(value), sort)

    @property
    def value(self) -> int:
        return bits_to_int(self.bits)


@dataclass(frozen=True)
class Coerce:
    source: Sort
    target: Sort
    arg: "Term"

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError(f"coercion from {self.source} to itself")

    @property
    def sort(self) -> Sort:
        return self.target


@dataclass(frozen=True)
class Rel:
    symbol: str
    lhs: "Term"
    rhs: "Term"

    def __post_init__(self):
        if self.symbol not in RELATION_SYMBOLS:
            raise ValueError(f"unknown relation {self.symbol!r}")

    @property
    def sort(self) -> Sort:
        return PROP

    @property
    def is_iff(self) -> bool:
        return self.symbol == "=" and self.lhs.sort == PROP


Term = Union[Var, Op, Numeral, Coerce, Rel]


@dataclass(frozen=True)
class ClassAtom:
    """Class applied to carrier sorts, e.g. ``monoid(int)`` or ``module(r, m)``"""
    cls: str
    args: Tuple[Sort, ...]

    def __str__(self) -> str:
        return f"{self.cls}({', '.join(format_sort(a) for a in self.args)})"

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.args)

    def variables(self) -> List[str]:
        seen: List[str] = []
        for arg in self.args:
            for name in sorted(sort_vars(arg)):
                if name not in seen:
                    seen.append(name)
        return seen

    def substitute(self, bindings: Dict[str, Sort]) -> "ClassAtom":
        return ClassAtom(self.cls, tuple(substitute_sort(a, bindings) for a in self.args))

    def match(self, other: "ClassAtom", bindings: Optional[Dict[str, Sort]] = None) -> Optional[Dict[str, Sort]]:
        """Match this pattern against ``other``; returns the extended bindings or None"""
        if self.cls != other.cls or len(self.args) != len(other.args):
            return None
        result = dict(bindings or {})
        for pattern, sort in zip(self.args, other.args):
            if not match_sort(pattern, sort, result):
                return None
        return result


def int_to_bits(value: int) -> Tuple[int, ...]:
    if value == 0:
        return (0,)
    bits = []
    while value:
        bits.append(value & 1)
        value >>= 1
    return tuple(bits)


def bits_to_int(bits: Tuple[int, ...]) -> int:
    return sum(bit << i for i, bit in enumerate(bits))


def children(term: Term) -> Tuple[Term, ...]:
    if isinstance(term, Op):
        return term.args
    if isinstance(term, Coerce):
        return (term.arg,)
    if isinstance(term, Rel):
        return (term.lhs, term.rhs)
    return ()


def with_children(term: Term, new_children: Tuple[Term, ...]) -> Term:
    if isinstance(term, Op):
        return Op(term.symbol, tuple(new_children), term.sort)
    if isinstance(term, Coerce):
        return Coerce(term.source, term.target, new_children[0])
    if isinstance(term, Rel):
        return Rel(term.symbol, new_children[0], new_children[1])
    return term


def subterm_at(term: Term, position: Position) -> Term:
    for index in position:
        kids = children(term)
        if index >= len(kids):
            raise IndexError(f"position {list(position)} does not exist")
        term = kids[index]
    return term


def replace_at(term: Term, position: Position, replacement: Term) -> Term:
    if not position:
        return replacement
    kids = list(children(term))
    head, rest = position[0], position[1:]
    if head >= len(kids):
        raise IndexError(f"position {list(position)} does not exist")
    kids[head] = replace_at(kids[head], rest, replacement)
    return with_children(term, tuple(kids))


def iter_subterms(term: Term, position: Position = ()) -> Iterator[Tuple[Position, Term]]:
    """Pre-order walk yielding ``(position, subterm)``"""
    yield position, term
    for i, child in enumerate(children(term)):
        yield from iter_subterms(child, position + (i,))


def iter_postorder(term: Term, position: Position = ()) -> Iterator[Tuple[Position, Term]]:
    """Post-order walk; leftmost innermost subterms come first"""
    for i, child in enumerate(children(term)):
        yield from iter_postorder(child, position + (i,))
    yield position, term


def free_vars(term: Term) -> List[str]:
    """Variable names in first-occurrence order"""
    seen: Dict[str, None] = {}
    for _, sub in iter_subterms(term):
        if isinstance(sub, Var):
            seen.setdefault(sub.name, None)
    return list(seen)


def term_vars(term: Term) -> Dict[str, Sort]:
    result: Dict[str, Sort] = {}
    for _, sub in iter_subterms(term):
        if isinstance(sub, Var):
            result.setdefault(sub.name, sub.sort)
    return result


def term_size(term: Term) -> int:
    return sum(1 for _ in iter_subterms(term))


def term_depth(term: Term) -> int:
    kids = children(term)
    return 1 + max((term_depth(k) for k in kids), default=0)


def term_sort_vars(term: Term) -> List[str]:
    names: List[str] = []
    for _, sub in iter_subterms(term):
        sorts = [sub.sort]
        if isinstance(sub, Coerce):
            sorts.append(sub.source)
        for sort in sorts:
            for name in sorted(sort_vars(sort)):
                if name not in names:
                    names.append(name)
    return names


@dataclass
class Substitution:
    """Bindings of term variables and sort variables produced by matching"""
    terms: Dict[str, Term] = field(default_factory=dict)
    sorts: Dict[str, Sort] = field(default_factory=dict)

    def copy(self) -> "Substitution":
        return Substitution(dict(self.terms), dict(self.sorts))


def match(pattern: Term, term: Term, subst: Optional[Substitution] = None) -> Optional[Substitution]:
    """
    Syntactic first-order matching.

    Pattern variables bind whole subterms and sort variables in the pattern's
    sorts bind consistently; a repeated pattern variable requires equal
    subterms. Returns a new substitution or None.
    """
    result = subst.copy() if subst is not None else Substitution()
    if _match_into(pattern, term, result):
        return result
    return None


def _match_into(pattern: Term, term: Term, subst: Substitution) -> bool:
    if isinstance(pattern, Var):
        bound = subst.terms.get(pattern.name)
        if bound is not None:
            return bound == term
        if not match_sort(pattern.sort, term.sort, subst.sorts):
            return False
        subst.terms[pattern.name] = term
        return True
    if type(pattern) is not type(term):
        return False
    if isinstance(pattern, Op):
        if pattern.symbol != term.symbol or len(pattern.args) != len(term.args):
            return False
        if not match_sort(pattern.sort, term.sort, subst.sorts):
            return False
        return all(_match_into(p, t, subst) for p, t in zip(pattern.args, term.args))
    if isinstance(pattern, Numeral):
        return pattern.bits == term.bits and match_sort(pattern.sort, term.sort, subst.sorts)
    if isinstance(pattern, Coerce):
        return (
            match_sort(pattern.source, term.source, subst.sorts)
            and match_sort(pattern.target, term.target, subst.sorts)
            and _match_into(pattern.arg, term.arg, subst)
        )
    if isinstance(pattern, Rel):
        return (
            pattern.symbol == term.symbol
            and _match_into(pattern.lhs, term.lhs, subst)
            and _match_into(pattern.rhs, term.rhs, subst)
        )
    return False


def instantiate(pattern: Term, subst: Substitution) -> Term:
    """Apply a substitution; unbound variables keep their (substituted) sort"""
    if isinstance(pattern, Var):
        bound = subst.terms.get(pattern.name)
        if bound is not None:
            return bound
        return Var(pattern.name, substitute_sort(pattern.sort, subst.sorts))
    if isinstance(pattern, Op):
        return Op(
            pattern.symbol,
            tuple(instantiate(a, subst) for a in pattern.args),
            substitute_sort(pattern.sort, subst.sorts),
        )
    if isinstance(pattern, Numeral):
        return Numeral(pattern.bits, substitute_sort(pattern.sort, subst.sorts))
    if isinstance(pattern, Coerce):
        return Coerce(
            substitute_sort(pattern.source, subst.sorts),
            substitute_sort(pattern.target, subst.sorts),
            instantiate(pattern.arg, subst),
        )
    return Rel(pattern.symbol, instantiate(pattern.lhs, subst), instantiate(pattern.rhs, subst))


def rename_vars(term: Term, renaming: Dict[str, str]) -> Term:
    if isinstance(term, Var):
        return Var(renaming.get(term.name, term.name), term.sort)
    kids = children(term)
    if not kids:
        return term
    return with_children(term, tuple(rename_vars(k, renaming) for k in kids))


def contains_subterm(term: Term, needle: Term) -> bool:
    return any(sub == needle for _, sub in iter_subterms(term))
