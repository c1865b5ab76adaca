"""
Commutative (semi)ring normalization in Horner form.

The normalizer evaluates a term bottom-up and rewrites it in place with the
schemas of ``schemas.ring_schemas``. Every rewrite is recorded, so the
result is a trace from ``t = canonical(t)`` to reflexivity (or from ``l = r``
to ``canonical(l) = canonical(r)``) that a checker replays schema by schema.
"""

import logging
from dataclasses import dataclass
from typing import Any, Optional, Tuple, Union

from ..core.exceptions import ExponentLimitError, UnsupportedSymbolError
from ..hierarchy import Env
from ..prooftrace import ProofTrace, Terminal, TraceStep
from ..syntax import NAT, Numeral, Op, Position, Rel, Sort, Term, format_term
from .capability import SEMIRING, carrier_mode
from .horner import ONE, ZERO, AtomIndex, Const, Horner, HornerPoly, const, is_monomial, to_term, top_var
from .literals import literal_value
from .schemas import StepRecorder, ring_schemas

logger = logging.getLogger(__name__)

EXPONENT_LIMIT = 65536

FIELD_SYMBOLS = frozenset({"/", "div", "inv", "⁻¹"})
FOREIGN_SYMBOLS = frozenset({"•", "≫"})

RING_CLASSES = ("comm_ring",)
SEMIRING_CLASSES = ("comm_semiring",)


def ring_mode(sort: Sort, env: Optional[Env] = None) -> str:
    return carrier_mode(sort, env, RING_CLASSES, SEMIRING_CLASSES)


def _exp(value: int) -> Numeral:
    return Numeral.of_int(value, NAT)


class _RingEvaluator:
    def __init__(self, recorder: StepRecorder, atoms: AtomIndex, semiring: bool, exponent_limit: int):
        self.rec = recorder
        self.atoms = atoms
        self.semiring = semiring
        self.exponent_limit = exponent_limit

    def lit(self, value, sort: Sort) -> Term:
        return to_term(const(value), self.atoms, sort)

    def sort_at(self, position: Position) -> Sort:
        return self.rec.at(position).sort

    # -- evaluation -----------------------------------------------------------

    def eval(self, position: Position) -> HornerPoly:
        term = self.rec.at(position)
        value = literal_value(term)
        if value is not None:
            return const(value)
        if isinstance(term, Op):
            symbol = term.symbol
            if symbol == "+":
                left = self.eval(position + (0,))
                right = self.eval(position + (1,))
                return self.add(position, left, right)
            if symbol == "*":
                left = self.eval(position + (0,))
                right = self.eval(position + (1,))
                return self.mul(position, left, right)
            if symbol == "^" and isinstance(term.args[1], Numeral):
                exponent = term.args[1].value
                if exponent > self.exponent_limit:
                    raise ExponentLimitError(f"exponent {exponent} above limit {self.exponent_limit}")
                base = self.eval(position + (0,))
                return self.pow(position, base, exponent)
            if symbol in ("-", "neg"):
                if self.semiring:
                    raise UnsupportedSymbolError(symbol, position, "no additive inverse in a semiring")
                self.rec.apply("sub_eq_add_neg" if symbol == "-" else "neg_eq_neg_one_mul", position)
                return self.eval(position)
            if symbol in FOREIGN_SYMBOLS or symbol in FIELD_SYMBOLS:
                raise UnsupportedSymbolError(symbol, position)
        index = self.atoms.index(term)
        self.rec.apply("atom_intro", position)
        return Horner(ONE, index, 1, ZERO)

    # -- addition -------------------------------------------------------------

    def add(self, position: Position, p: HornerPoly, q: HornerPoly) -> HornerPoly:
        sort = self.sort_at(position)
        if isinstance(p, Const) and isinstance(q, Const):
            if p.is_zero:
                self.rec.apply("zero_add", position)
            elif q.is_zero:
                self.rec.apply("add_zero", position)
            else:
                self.rec.apply("const_add", position, k3=self.lit(p.value + q.value, sort))
            return const(p.value + q.value)
        x, y = top_var(p), top_var(q)
        if x is not None and (y is None or x < y):
            self.rec.apply("add_horner_left", position)
            addend = self.add(position + (1,), p.addend, q)
            return Horner(p.base, p.var, p.exp, addend)
        if y is not None and (x is None or y < x):
            self.rec.apply("add_horner_right", position)
            addend = self.add(position + (1,), p, q.addend)
            return Horner(q.base, q.var, q.exp, addend)
        return self._add_same_var(position, p, q)

    def _add_same_var(self, position: Position, p: Horner, q: Horner) -> HornerPoly:
        if p.exp == q.exp:
            self.rec.apply("add_horner_same", position)
            exponent = p.exp
            base = self.add(position + (0, 0), p.base, q.base)
        elif p.exp < q.exp:
            self.rec.apply("add_horner_lt", position, k=_exp(q.exp - p.exp))
            exponent = p.exp
            shifted = Horner(q.base, q.var, q.exp - p.exp, ZERO)
            base = self.add(position + (0, 0), p.base, shifted)
        else:
            self.rec.apply("add_horner_gt", position, k=_exp(p.exp - q.exp))
            exponent = q.exp
            shifted = Horner(p.base, p.var, p.exp - q.exp, ZERO)
            base = self.add(position + (0, 0), shifted, q.base)
        addend = self.add(position + (1,), p.addend, q.addend)
        return self.mk_horner(position, base, p.var, exponent, addend)

    def mk_horner(self, position: Position, base: HornerPoly, var: int, exponent: int, addend: HornerPoly) -> HornerPoly:
        """Restore canonical form of ``base * x^exponent + addend`` after arithmetic on the parts"""
        if base.is_zero:
            self.rec.apply("zero_mul_horner", position)
            return addend
        if is_monomial(base) and base.var == var:
            merged = base.exp + exponent
            self.rec.apply("horner_merge", position, m=_exp(merged))
            return self.mk_horner(position, base.base, var, merged, addend)
        if top_var(addend) is not None and top_var(addend) <= var:
            self.rec.apply("horner_split", position)
            return self.add(position, Horner(base, var, exponent, ZERO), addend)
        return Horner(base, var, exponent, addend)

    # -- multiplication -------------------------------------------------------

    def mul(self, position: Position, p: HornerPoly, q: HornerPoly) -> HornerPoly:
        sort = self.sort_at(position)
        if p.is_zero:
            self.rec.apply("zero_mul", position)
            return ZERO
        if q.is_zero:
            self.rec.apply("mul_zero", position)
            return ZERO
        if isinstance(p, Const) and isinstance(q, Const):
            self.rec.apply("const_mul", position, k3=self.lit(p.value * q.value, sort))
            return const(p.value * q.value)
        x, y = top_var(p), top_var(q)
        if x is not None and (y is None or x <= y):
            self.rec.apply("horner_mul", position)
            base = self.mul(position + (0, 0), p.base, q)
            addend = self.mul(position + (1,), p.addend, q)
            if x == y:
                return self.mk_horner(position, base, x, p.exp, addend)
            return Horner(base, p.var, p.exp, addend)
        self.rec.apply("mul_horner", position)
        base = self.mul(position + (0, 0), p, q.base)
        addend = self.mul(position + (1,), p, q.addend)
        return Horner(base, q.var, q.exp, addend)

    # -- powers ---------------------------------------------------------------

    def pow(self, position: Position, p: HornerPoly, k: int) -> HornerPoly:
        sort = self.sort_at(position)
        if k == 0:
            self.rec.apply("pow_zero", position)
            return ONE
        if k == 1:
            self.rec.apply("pow_one", position)
            return p
        if isinstance(p, Const):
            self.rec.apply("const_pow", position, k3=self.lit(p.value**k, sort))
            return const(p.value**k)
        if is_monomial(p):
            self.rec.apply("monomial_pow", position, m=_exp(p.exp * k))
            base = self.pow(position + (0, 0), p.base, k)
            return Horner(base, p.var, p.exp * k, ZERO)
        if k == 2:
            self.rec.apply("pow_two", position)
            return self.mul(position, p, p)
        half = k // 2
        if k % 2 == 0:
            self.rec.apply("pow_bit0", position, n=_exp(half))
            root = self.pow(position + (0,), p, half)
            return self.pow(position, root, 2)
        self.rec.apply("pow_bit1", position, n=_exp(half))
        root = self.pow(position + (0, 0), p, half)
        square = self.pow(position + (0,), root, 2)
        return self.mul(position, square, p)


@dataclass
class NotEqual:
    """Both sides normalized to different canonical forms"""
    lhs: Term
    rhs: Term
    lhs_form: Any
    rhs_form: Any

    def __str__(self) -> str:
        return f"normal forms differ: {format_term(self.lhs)} ≠ {format_term(self.rhs)}"


class RingEngine:
    """
    Normalizes terms of one carrier sort.

    ``semiring=True`` forces semiring mode even on sorts with negation.
    """

    def __init__(self, env: Optional[Env] = None, exponent_limit: int = EXPONENT_LIMIT, semiring: bool = False):
        self.env = env
        self.exponent_limit = exponent_limit
        self.semiring = semiring

    def _is_semiring(self, sort: Sort) -> bool:
        return self.semiring or ring_mode(sort, self.env) == SEMIRING

    def _evaluator(self, recorder: StepRecorder, atoms: AtomIndex, sort: Sort) -> _RingEvaluator:
        return _RingEvaluator(recorder, atoms, self._is_semiring(sort), self.exponent_limit)

    def normalize(self, term: Term) -> Tuple[Term, HornerPoly, ProofTrace]:
        """Canonical term, its Horner form and the trace from ``term = canonical`` to ``canonical = canonical``"""
        recorder = StepRecorder(term, ring_schemas())
        atoms = AtomIndex()
        poly = self._evaluator(recorder, atoms, term.sort).eval(())
        canonical = to_term(poly, atoms, term.sort)
        steps = [
            TraceStep(s.justification, (0,) + s.position, s.substitution, Rel("=", s.result, canonical))
            for s in recorder.steps
        ]
        trace = ProofTrace(Rel("=", term, canonical), "ring", steps, Terminal.REFLEXIVITY)
        logger.debug(f"ring: {format_term(term)} ~> {format_term(canonical)} in {len(recorder.steps)} step(s)")
        return canonical, poly, trace

    def normalize_poly(self, term: Term, atoms: AtomIndex) -> HornerPoly:
        """Horner form only, sharing ``atoms`` with other calls"""
        recorder = StepRecorder(term, ring_schemas())
        return self._evaluator(recorder, atoms, term.sort).eval(())

    def prove_eq(self, equation: Rel) -> Union[ProofTrace, NotEqual]:
        if not isinstance(equation, Rel) or equation.symbol != "=":
            raise UnsupportedSymbolError(getattr(equation, "symbol", "?"), (), "ring proves equations")
        recorder = StepRecorder(equation, ring_schemas())
        atoms = AtomIndex()
        evaluator = self._evaluator(recorder, atoms, equation.lhs.sort)
        left = evaluator.eval((0,))
        right = evaluator.eval((1,))
        if left != right:
            sort = equation.lhs.sort
            return NotEqual(to_term(left, atoms, sort), to_term(right, atoms, sort), left, right)
        return ProofTrace(equation, "ring", recorder.steps, Terminal.REFLEXIVITY)


def ring_normalize(term: Term, env: Optional[Env] = None, exponent_limit: int = EXPONENT_LIMIT) -> Tuple[HornerPoly, ProofTrace]:
    """Horner form of ``term`` and the trace ending at its canonical term"""
    _, poly, trace = RingEngine(env, exponent_limit).normalize(term)
    return poly, trace


def ring_prove_eq(equation: Rel, env: Optional[Env] = None, exponent_limit: int = EXPONENT_LIMIT) -> Union[ProofTrace, NotEqual]:
    return RingEngine(env, exponent_limit).prove_eq(equation)
