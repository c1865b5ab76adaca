"""Signed literal terms: a numeral, or ``neg`` of a positive numeral"""

from fractions import Fraction
from typing import Optional, Union

from ..syntax import NAT, Numeral, Op, Sort, Term


def literal_value(term: Term) -> Optional[int]:
    if isinstance(term, Numeral):
        return term.value
    if (
        isinstance(term, Op)
        and term.symbol == "neg"
        and term.sort != NAT
        and isinstance(term.args[0], Numeral)
        and term.args[0].value > 0
    ):
        return -term.args[0].value
    return None


def is_literal(term: Term) -> bool:
    return literal_value(term) is not None


def literal_term(value: Union[int, Fraction], sort: Sort) -> Term:
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise ValueError(f"{value} is not an integer literal")
        value = value.numerator
    if value >= 0:
        return Numeral.of_int(value, sort)
    if sort == NAT:
        raise ValueError(f"negative literal {value} in nat")
    return Op("neg", (Numeral.of_int(-value, sort),), sort)
