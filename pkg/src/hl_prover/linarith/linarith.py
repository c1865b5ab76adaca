"""
Linear arithmetic goals.

Hypotheses and the goal are relations between terms. Each side is brought
to a polynomial by the ring normalizer; degree-one monomials become
variables and every other monomial is an opaque variable of its own. The
goal is negated and added to the hypotheses; a certificate of infeasibility
for each resulting system proves the goal.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..core.exceptions import UnsupportedSymbolError
from ..hierarchy import Env
from ..prooftrace import ProofTrace, Terminal
from ..syntax import INT, NAT, Binder, Hypothesis, Rel, Sort, Term, format_term
from ..arith.horner import AtomIndex, Monomial, to_monomials
from ..arith.ring import RingEngine
from .fourier_motzkin import VAR_LIMIT, Certificate, Feasible, check_cert, fm_decide
from .omega import int_tighten
from .system import EQ, LE, LT, Constraint, LinearSystem

logger = logging.getLogger(__name__)

INTEGER_SORTS = (NAT, INT)

_RELATIONS = {"<": LT, "≤": LE, "=": EQ}


@dataclass
class LinarithEvidence:
    """One system and certificate per refuted negation of the goal"""
    systems: List[LinearSystem] = field(default_factory=list)
    certificates: List[Certificate] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "systems": [s.to_dict() for s in self.systems],
            "certificates": [c.to_dict(s) for c, s in zip(self.certificates, self.systems)],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "LinarithEvidence":
        return cls(
            [LinearSystem.from_dict(s) for s in data.get("systems", [])],
            [Certificate.from_dict(c) for c in data.get("certificates", [])],
        )


@dataclass
class Unknown:
    """The negated goal is satisfiable over the rationals"""
    witness: Dict[str, Fraction]

    def __str__(self) -> str:
        point = ", ".join(f"{name} = {value}" for name, value in self.witness.items())
        return f"goal not entailed; counterexample {point}" if point else "goal not entailed"


class Linearizer:
    """Maps relations to constraints over variables shared by one problem"""

    def __init__(self, env: Optional[Env] = None, sort: Sort = INT):
        self.sort = sort
        self.engine = RingEngine(env, semiring=sort == NAT)
        self.atoms = AtomIndex()
        self.monomials: Dict[Monomial, int] = {}
        self.names: Dict[int, str] = {}

    def _var(self, monomial: Monomial) -> int:
        if monomial not in self.monomials:
            index = len(self.monomials)
            self.monomials[monomial] = index
            self.names[index] = " * ".join(
                format_term(self.atoms.atoms[a]) + (f"^{e}" if e > 1 else "") for a, e in monomial
            )
        return self.monomials[monomial]

    def difference(self, lhs: Term, rhs: Term) -> Tuple[Dict[int, Fraction], Fraction]:
        """Coefficients and constant of ``lhs - rhs``"""
        left = to_monomials(self.engine.normalize_poly(lhs, self.atoms))
        right = to_monomials(self.engine.normalize_poly(rhs, self.atoms))
        coeffs: Dict[int, Fraction] = {}
        constant = Fraction(0)
        for sign, poly in ((1, left), (-1, right)):
            for monomial, c in poly.items():
                if not monomial:
                    constant += sign * c
                else:
                    var = self._var(monomial)
                    coeffs[var] = coeffs.get(var, Fraction(0)) + sign * c
        return coeffs, constant

    def constraint(self, relation: Rel) -> Constraint:
        rel = _RELATIONS.get(relation.symbol)
        if rel is None:
            raise UnsupportedSymbolError(relation.symbol, (), "linarith handles < ≤ =")
        coeffs, constant = self.difference(relation.lhs, relation.rhs)
        return Constraint.of(coeffs, constant, rel)

    def nonnegativity(self) -> List[Constraint]:
        if self.sort != NAT:
            return []
        return [Constraint.of({v: -1}, 0, LE) for v in sorted(self.names)]


def goal_negations(goal: Constraint) -> List[Constraint]:
    if goal.rel == EQ:
        as_le = Constraint(goal.coeffs, goal.constant, LE)
        flipped = Constraint.of({v: -c for v, c in goal.coeffs}, -goal.constant, LE)
        return [as_le.negate(), flipped.negate()]
    return [goal.negate()]


def build_systems(
    hypotheses: Sequence[Rel],
    goal: Rel,
    env: Optional[Env] = None,
    sort: Optional[Sort] = None,
) -> List[LinearSystem]:
    """
    The systems whose infeasibility proves ``goal``.

    Hypotheses other than < ≤ = are ignored. Over nat and int the systems
    are tightened to integer bounds.
    """
    if goal.symbol not in _RELATIONS:
        raise UnsupportedSymbolError(goal.symbol, (), "linarith proves < ≤ =")
    sort = sort or goal.lhs.sort
    linearizer = Linearizer(env, sort)
    goal_constraint = linearizer.constraint(goal)
    facts: List[Constraint] = []
    for hypothesis in hypotheses:
        if isinstance(hypothesis, Rel) and hypothesis.symbol in _RELATIONS and hypothesis.lhs.sort == sort:
            facts.append(linearizer.constraint(hypothesis))
        else:
            logger.debug(f"linarith: ignoring hypothesis {hypothesis}")
    facts.extend(linearizer.nonnegativity())
    integer = sort in INTEGER_SORTS
    systems = []
    for negation in goal_negations(goal_constraint):
        system = LinearSystem(facts + [negation], integer, dict(linearizer.names))
        systems.append(int_tighten(system) if integer else system)
    return systems


def linarith_system(system: LinearSystem, var_limit: int = VAR_LIMIT) -> Union[Certificate, Unknown]:
    """Refute one system, or report a satisfying point"""
    result = fm_decide(system, var_limit=var_limit)
    if isinstance(result, Feasible):
        return Unknown({system.names.get(v, f"x{v}"): value for v, value in sorted(result.witness.items())})
    if not check_cert(result.certificate, system):
        raise AssertionError("elimination produced a certificate that does not check")
    return result.certificate


def linarith_constraints(
    hypotheses: LinearSystem, goal: Constraint, var_limit: int = VAR_LIMIT
) -> Union[LinarithEvidence, Unknown]:
    """Entailment of one constraint by a system, with no terms involved"""
    evidence = LinarithEvidence()
    for negation in goal_negations(goal):
        system = hypotheses.with_constraints(list(hypotheses.constraints) + [negation])
        if system.integer:
            system = int_tighten(system)
        outcome = linarith_system(system, var_limit)
        if isinstance(outcome, Unknown):
            return outcome
        evidence.systems.append(system)
        evidence.certificates.append(outcome)
    return evidence


def linarith_goal(
    hypotheses: Sequence[Rel],
    goal: Rel,
    env: Optional[Env] = None,
    var_limit: int = VAR_LIMIT,
    binders: Tuple[Binder, ...] = (),
    named: Tuple[Hypothesis, ...] = (),
) -> Union[ProofTrace, Unknown]:
    """
    Prove ``goal`` from ``hypotheses`` by refuting its negation.

    Returns a trace whose evidence holds every system and certificate, or
    Unknown with a rational counterexample; never a false proof.
    """
    systems = build_systems(hypotheses, goal, env)
    certificates: List[Certificate] = []
    for system in systems:
        outcome = linarith_system(system, var_limit)
        if isinstance(outcome, Unknown):
            logger.info(f"linarith: {format_term(goal)} not entailed")
            return outcome
        certificates.append(outcome)
    evidence = LinarithEvidence(systems, certificates)
    if not named:
        named = tuple(Hypothesis(f"h{i}", h) for i, h in enumerate(hypotheses))
    return ProofTrace(goal, "linarith", [], Terminal.CERTIFICATE, evidence, binders, named)
