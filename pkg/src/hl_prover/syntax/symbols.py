import copy
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .sorts import (
    INT,
    NAT,
    PRELUDE_SORTS,
    RAT,
    REAL,
    SORT_ALIASES,
    Sort,
    arrow,
    carrier,
    sort_var,
)

_S = sort_var("s")
_R = sort_var("r")
_M = sort_var("m")
_A = sort_var("a")
_B = sort_var("b")


@dataclass(frozen=True)
class OpSignature:
    symbol: str
    params: Tuple[Sort, ...]
    result: Sort
    attributes: FrozenSet[str] = frozenset()
    builtin: bool = False
    owner: Optional[str] = None

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class Coercion:
    source: Sort
    target: Sort
    injective: bool = True


BUILTIN_OPS: Dict[str, OpSignature] = {
    "+": OpSignature("+", (_S, _S), _S, builtin=True),
    "*": OpSignature("*", (_S, _S), _S, builtin=True),
    "-": OpSignature("-", (_S, _S), _S, builtin=True),
    "neg": OpSignature("neg", (_S,), _S, builtin=True),
    "^": OpSignature("^", (_S, NAT), _S, builtin=True),
    "•": OpSignature("•", (_R, _M), _M, builtin=True),
    "≫": OpSignature("≫", (_S, _S), _S, builtin=True),
    "app": OpSignature("app", (arrow(_B, _A), _B), _A, builtin=True),
    "norm": OpSignature("norm", (_S,), REAL, builtin=True),
}

# Class-body tokens and the canonical symbol each one bundles.
PROJECTION_SYMBOLS: Dict[str, str] = {
    "+": "+",
    "*": "*",
    "-": "-",
    "neg": "neg",
    "^": "^",
    "•": "•",
    "*.": "•",
    "≫": "≫",
    ">>": "≫",
    "norm": "norm",
    "0": "0",
    "1": "1",
    "=": "=",
    "≤": "≤",
    "<=": "≤",
    "<": "<",
    "≠": "≠",
    "!=": "≠",
    "∣": "∣",
    "dvd": "∣",
}

RELATION_PROJECTIONS = frozenset({"=", "≤", "<", "≠", "∣"})


class SymbolTable:
    """
    Names visible while elaborating terms: sorts, operators, coercions and
    classes. Starts from the prelude; the environment builder extends it
    declaration by declaration.
    """

    def __init__(self):
        self.sorts: Dict[str, Sort] = {}
        self.ops: Dict[str, OpSignature] = dict(BUILTIN_OPS)
        self.coercions: Dict[Tuple[Sort, Sort], Coercion] = {}
        self.classes: Dict[str, Tuple[str, ...]] = {}
        self.projection_owner: Dict[str, str] = {}

    @classmethod
    def prelude(cls) -> "SymbolTable":
        table = cls()
        for sort in PRELUDE_SORTS:
            table.sorts[sort.name] = sort
        for source, target in ((NAT, INT), (INT, RAT), (RAT, REAL)):
            table.coercions[(source, target)] = Coercion(source, target, injective=True)
        return table

    def copy(self) -> "SymbolTable":
        return copy.copy(self)._detach()

    def _detach(self) -> "SymbolTable":
        self.sorts = dict(self.sorts)
        self.ops = dict(self.ops)
        self.coercions = dict(self.coercions)
        self.classes = dict(self.classes)
        self.projection_owner = dict(self.projection_owner)
        return self

    def resolve_sort_name(self, name: str) -> Optional[Sort]:
        name = SORT_ALIASES.get(name, name)
        return self.sorts.get(name)

    def sort_or_variable(self, name: str) -> Sort:
        """Declared carrier, else a sort variable of that name"""
        return self.resolve_sort_name(name) or sort_var(name)

    def add_sort(self, name: str) -> Sort:
        sort = carrier(name)
        self.sorts[name] = sort
        return sort

    def add_op(self, signature: OpSignature) -> None:
        self.ops[signature.symbol] = signature

    def add_attributes(self, symbol: str, attributes: FrozenSet[str]) -> None:
        current = self.ops[symbol]
        self.ops[symbol] = OpSignature(
            current.symbol,
            current.params,
            current.result,
            current.attributes | attributes,
            current.builtin,
            current.owner,
        )

    def add_coercion(self, coercion: Coercion) -> None:
        self.coercions[(coercion.source, coercion.target)] = coercion

    def coercions_from(self, source: Sort) -> List[Coercion]:
        return [c for (s, _), c in self.coercions.items() if s == source]

    def coercions_into(self, target: Sort) -> List[Coercion]:
        return [c for (_, t), c in self.coercions.items() if t == target]

    def coercion(self, source: Sort, target: Sort) -> Optional[Coercion]:
        return self.coercions.get((source, target))

    def is_assoc(self, symbol: str) -> bool:
        signature = self.ops.get(symbol)
        return signature is not None and "assoc" in signature.attributes
