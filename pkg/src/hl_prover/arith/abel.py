"""
Normalization in commutative additive groups and monoids.

The canonical form is ``k1 • a1 + (k2 • a2 + (... + c))``: atoms in
first-occurrence order with nonzero integer coefficients, the constant last.
Over ``nat`` (and any carrier that is only an additive commutative monoid)
coefficients are natural numbers and subtraction is rejected.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from ..core.exceptions import UnsupportedSymbolError
from ..hierarchy import Env
from ..prooftrace import ProofTrace, Terminal, TraceStep
from ..syntax import INT, NAT, Op, Position, Rel, Sort, Term, format_term
from .capability import RING, carrier_mode
from .horner import AtomIndex
from .literals import literal_term, literal_value
from .ring import NotEqual
from .schemas import StepRecorder, abel_schemas

logger = logging.getLogger(__name__)

GROUP_CLASSES = ("add_comm_group",)
MONOID_CLASSES = ("add_comm_monoid",)

Coefficients = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class _Form:
    terms: Coefficients = ()
    constant: int = 0

    @property
    def head(self) -> Optional[Tuple[int, int]]:
        return self.terms[0] if self.terms else None

    def tail(self) -> "_Form":
        return _Form(self.terms[1:], self.constant)

    def cons(self, index: int, coefficient: int) -> "_Form":
        return _Form(((index, coefficient),) + self.terms, self.constant)


@dataclass(frozen=True)
class AbelForm:
    """Atom coefficients in first-occurrence order, plus a constant"""
    terms: Tuple[Tuple[Term, int], ...] = ()
    constant: int = 0

    @property
    def coefficients(self) -> Dict[Term, int]:
        return dict(self.terms)


class _AbelEvaluator:
    def __init__(self, recorder: StepRecorder, atoms: AtomIndex, group: bool):
        self.rec = recorder
        self.atoms = atoms
        self.group = group
        self.scalar_sort = INT if group else NAT

    def scalar(self, value: int) -> Term:
        return literal_term(value, self.scalar_sort)

    def eval(self, position: Position) -> _Form:
        term = self.rec.at(position)
        value = literal_value(term)
        if value is not None:
            return _Form((), value)
        if isinstance(term, Op):
            symbol = term.symbol
            if symbol == "+":
                left = self.eval(position + (0,))
                right = self.eval(position + (1,))
                return self.add(position, left, right)
            if symbol in ("-", "neg"):
                if not self.group:
                    raise UnsupportedSymbolError(symbol, position, "no additive inverse in a monoid")
                if symbol == "-":
                    self.rec.apply("sub_eq_add_neg", position)
                    return self.eval(position)
                return self.neg(position, self.eval(position + (0,)))
            if symbol == "•":
                factor = literal_value(term.args[0])
                if factor is not None:
                    return self._smul(position, term.args[0], factor)
            if symbol in ("*", "^"):
                raise UnsupportedSymbolError(symbol, position, "abel works in additive structures")
        index = self.atoms.index(term)
        self.rec.apply("abel_atom", position, sorts={"z": self.scalar_sort})
        return _Form(((index, 1),), 0)

    def _smul(self, position: Position, scalar: Term, factor: int) -> _Form:
        if factor < 0 and not self.group:
            raise UnsupportedSymbolError("neg", position + (0,), "negative coefficient in a monoid")
        if scalar.sort != self.scalar_sort:
            self.rec.apply("smul_cast", position, sorts={"w": self.scalar_sort}, j=self.scalar(factor))
        return self.smul(position, factor, self.eval(position + (1,)))

    def add(self, position: Position, a: _Form, b: _Form) -> _Form:
        sort = self.rec.at(position).sort
        if a.head is None and b.head is None:
            total = a.constant + b.constant
            self.rec.apply("const_add", position, k3=literal_term(total, sort))
            return _Form((), total)
        if a.head is not None and (b.head is None or a.head[0] < b.head[0]):
            self.rec.apply("abel_add_left", position)
            return self.add(position + (1,), a.tail(), b).cons(*a.head)
        if b.head is not None and (a.head is None or b.head[0] < a.head[0]):
            self.rec.apply("abel_add_right", position)
            return self.add(position + (1,), a, b.tail()).cons(*b.head)
        index, total = a.head[0], a.head[1] + b.head[1]
        self.rec.apply("abel_add_same", position, l=self.scalar(total))
        rest = self.add(position + (1,), a.tail(), b.tail())
        if total == 0:
            self.rec.apply("abel_zero_smul", position)
            return rest
        return rest.cons(index, total)

    def neg(self, position: Position, a: _Form) -> _Form:
        sort = self.rec.at(position).sort
        if a.head is None:
            if a.constant <= 0:
                self.rec.apply("const_neg", position, k3=literal_term(-a.constant, sort))
            return _Form((), -a.constant)
        index, coefficient = a.head
        self.rec.apply("abel_neg_add", position, l=self.scalar(-coefficient))
        return self.neg(position + (1,), a.tail()).cons(index, -coefficient)

    def smul(self, position: Position, factor: int, a: _Form) -> _Form:
        sort = self.rec.at(position).sort
        if factor == 0:
            self.rec.apply("zero_smul", position)
            return _Form()
        if a.head is None:
            self.rec.apply("const_smul", position, k3=literal_term(factor * a.constant, sort))
            return _Form((), factor * a.constant)
        index, coefficient = a.head
        self.rec.apply("abel_smul_add", position, l=self.scalar(factor * coefficient))
        return self.smul(position + (1,), factor, a.tail()).cons(index, factor * coefficient)


def _to_term(form: _Form, atoms: AtomIndex, sort: Sort, scalar_sort: Sort) -> Term:
    result = literal_term(form.constant, sort)
    for index, coefficient in reversed(form.terms):
        scaled = Op("•", (literal_term(coefficient, scalar_sort), atoms.atoms[index]), sort)
        result = Op("+", (scaled, result), sort)
    return result


def _public(form: _Form, atoms: AtomIndex) -> AbelForm:
    return AbelForm(tuple((atoms.atoms[i], k) for i, k in form.terms), form.constant)


class AbelEngine:
    def __init__(self, env: Optional[Env] = None):
        self.env = env

    def is_group(self, sort: Sort) -> bool:
        return carrier_mode(sort, self.env, GROUP_CLASSES, MONOID_CLASSES) == RING

    def normalize(self, term: Term) -> Tuple[Term, AbelForm, ProofTrace]:
        recorder = StepRecorder(term, abel_schemas())
        atoms = AtomIndex()
        evaluator = _AbelEvaluator(recorder, atoms, self.is_group(term.sort))
        form = evaluator.eval(())
        canonical = _to_term(form, atoms, term.sort, evaluator.scalar_sort)
        steps = [
            TraceStep(s.justification, (0,) + s.position, s.substitution, Rel("=", s.result, canonical))
            for s in recorder.steps
        ]
        logger.debug(f"abel: {format_term(term)} ~> {format_term(canonical)}")
        return canonical, _public(form, atoms), ProofTrace(Rel("=", term, canonical), "abel", steps)

    def prove_eq(self, equation: Rel) -> Union[ProofTrace, NotEqual]:
        if not isinstance(equation, Rel) or equation.symbol != "=":
            raise UnsupportedSymbolError(getattr(equation, "symbol", "?"), (), "abel proves equations")
        recorder = StepRecorder(equation, abel_schemas())
        atoms = AtomIndex()
        evaluator = _AbelEvaluator(recorder, atoms, self.is_group(equation.lhs.sort))
        left = evaluator.eval((0,))
        right = evaluator.eval((1,))
        if left != right:
            sort = equation.lhs.sort
            return NotEqual(
                _to_term(left, atoms, sort, evaluator.scalar_sort),
                _to_term(right, atoms, sort, evaluator.scalar_sort),
                _public(left, atoms),
                _public(right, atoms),
            )
        return ProofTrace(equation, "abel", recorder.steps, Terminal.REFLEXIVITY)


def abel_normalize(term: Term, env: Optional[Env] = None) -> Tuple[AbelForm, ProofTrace]:
    _, form, trace = AbelEngine(env).normalize(term)
    return form, trace


def abel_prove_eq(equation: Rel, env: Optional[Env] = None) -> Union[ProofTrace, NotEqual]:
    return AbelEngine(env).prove_eq(equation)
