"""
Horner-form polynomials.

``Horner(base, var, exp, addend)`` stands for ``base * x^exp + addend``
where ``x`` is atom number ``var``. In canonical form ``var`` is the least
atom occurring in the polynomial, ``addend`` only mentions atoms greater than
``var``, ``base`` is nonzero and its part free of ``x`` is nonzero.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from ..syntax import NAT, Numeral, Op, Sort, Term
from .literals import literal_term

Monomial = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class Const:
    value: Fraction

    @property
    def is_zero(self) -> bool:
        return self.value == 0


@dataclass(frozen=True)
class Horner:
    base: "HornerPoly"
    var: int
    exp: int
    addend: "HornerPoly"

    @property
    def is_zero(self) -> bool:
        return False


HornerPoly = Union[Const, Horner]

ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def const(value: Union[int, Fraction]) -> Const:
    return Const(Fraction(value))


def top_var(poly: HornerPoly) -> Optional[int]:
    """Least atom index in the polynomial, None for constants"""
    return poly.var if isinstance(poly, Horner) else None


def is_monomial(poly: HornerPoly) -> bool:
    """``base * x^e + 0``"""
    return isinstance(poly, Horner) and poly.addend == ZERO


class AtomIndex:
    """Atoms numbered by first occurrence; shared by every side of one problem"""

    def __init__(self):
        self.atoms: List[Term] = []
        self._index: Dict[Term, int] = {}

    def index(self, atom: Term) -> int:
        if atom not in self._index:
            self._index[atom] = len(self.atoms)
            self.atoms.append(atom)
        return self._index[atom]

    def __len__(self) -> int:
        return len(self.atoms)


def to_term(poly: HornerPoly, atoms: AtomIndex, sort: Sort) -> Term:
    """Canonical term: constants as literals, ``b * x ^ e + a`` otherwise"""
    if isinstance(poly, Const):
        return literal_term(poly.value, sort)
    power = Op("^", (atoms.atoms[poly.var], Numeral.of_int(poly.exp, NAT)), sort)
    return Op(
        "+",
        (Op("*", (to_term(poly.base, atoms, sort), power), sort), to_term(poly.addend, atoms, sort)),
        sort,
    )


def to_monomials(poly: HornerPoly) -> Dict[Monomial, Fraction]:
    """Sparse form: sorted ``((atom, exponent), ...)`` to coefficient, no zero entries"""
    result: Dict[Monomial, Fraction] = {}
    _collect(poly, (), Fraction(1), result)
    return {m: c for m, c in result.items() if c != 0}


def _collect(poly: HornerPoly, prefix: Monomial, scale: Fraction, out: Dict[Monomial, Fraction]) -> None:
    if isinstance(poly, Const):
        if poly.value:
            key = tuple(sorted(prefix))
            out[key] = out.get(key, Fraction(0)) + scale * poly.value
        return
    _collect(poly.base, _times(prefix, poly.var, poly.exp), scale, out)
    _collect(poly.addend, prefix, scale, out)


def _times(monomial: Monomial, var: int, exp: int) -> Monomial:
    powers = dict(monomial)
    powers[var] = powers.get(var, 0) + exp
    return tuple(sorted(powers.items()))


def degree(poly: HornerPoly) -> int:
    return max((sum(e for _, e in m) for m in to_monomials(poly)), default=0)
