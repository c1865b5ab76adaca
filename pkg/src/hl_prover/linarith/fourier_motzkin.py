"""
Fourier-Motzkin elimination with certificates.

Every working row carries the multipliers that produce it from the input
constraints, so an absurd row is its own certificate. Equalities are
eliminated first by substitution; the remaining variables are projected out
one at a time. A feasible system gets a witness by back-substitution through
the recorded elimination steps.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..core.exceptions import VariableLimitError
from .system import EQ, LT, Constraint, LinearSystem

logger = logging.getLogger(__name__)

VAR_LIMIT = 12


@dataclass(frozen=True)
class Certificate:
    """Multipliers, one per input constraint; inequalities take nonnegative ones"""
    multipliers: Tuple[Fraction, ...]

    def to_dict(self, system: Optional[LinearSystem] = None) -> Dict[str, Any]:
        data: Dict[str, Any] = {"multipliers": [str(m) for m in self.multipliers]}
        if system is not None:
            data["combined"] = combine(system, self.multipliers).to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Certificate":
        return cls(tuple(Fraction(m) for m in data["multipliers"]))


@dataclass
class Infeasible:
    certificate: Certificate

    feasible = False


@dataclass
class Feasible:
    witness: Dict[int, Fraction]

    feasible = True


FMResult = Union[Infeasible, Feasible]


def combine(system: LinearSystem, multipliers: Sequence[Fraction]) -> Constraint:
    total = Constraint.of({}, 0, EQ)
    for multiplier, constraint in zip(multipliers, system.constraints):
        if multiplier:
            total = total.plus(constraint.scale(multiplier))
    return total


def check_cert(certificate: Certificate, system: LinearSystem) -> bool:
    """The weighted sum has no variables and states something false"""
    multipliers = certificate.multipliers
    if len(multipliers) != len(system.constraints) or not any(multipliers):
        return False
    for multiplier, constraint in zip(multipliers, system.constraints):
        if multiplier < 0 and constraint.rel != EQ:
            return False
    return combine(system, multipliers).is_absurd


@dataclass(frozen=True)
class _Row:
    constraint: Constraint
    proof: Tuple[Fraction, ...]

    def scale(self, factor: Fraction) -> "_Row":
        return _Row(self.constraint.scale(factor), tuple(p * factor for p in self.proof))

    def plus(self, other: "_Row") -> "_Row":
        return _Row(self.constraint.plus(other.constraint), tuple(a + b for a, b in zip(self.proof, other.proof)))


def _unit(index: int, size: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(1 if i == index else 0) for i in range(size))


def _absurd(rows: List[_Row]) -> Optional[Infeasible]:
    for row in rows:
        if row.constraint.is_absurd:
            return Infeasible(Certificate(row.proof))
    return None


def _prune(rows: List[_Row]) -> List[_Row]:
    """Drop constant rows that hold and duplicate constraints"""
    seen = set()
    kept: List[_Row] = []
    for row in rows:
        if row.constraint.is_constant or row.constraint in seen:
            continue
        seen.add(row.constraint)
        kept.append(row)
    return kept


def _pick(rows: List[_Row], remaining: List[int], order: Optional[Sequence[int]]) -> int:
    if order is not None:
        for var in order:
            if var in remaining:
                return var
    strict = {v: 0 for v in remaining}
    for row in rows:
        if row.constraint.strict:
            for v in row.constraint.variables:
                strict[v] = strict.get(v, 0) + 1
    return min(remaining, key=lambda v: (strict[v], v))


def _remaining(rows: List[_Row]) -> List[int]:
    return sorted({v for row in rows for v in row.constraint.variables})


def fm_decide(
    system: LinearSystem,
    order: Optional[Sequence[int]] = None,
    var_limit: int = VAR_LIMIT,
) -> FMResult:
    """
    Decide a rational linear system.

    Args:
        system: Constraints to decide
        order: Elimination order; variables missing from it follow by the heuristic
        var_limit: Refuse systems with more variables than this

    Returns:
        Infeasible with a certificate, or Feasible with a satisfying point
    """
    variables = system.variables()
    if len(variables) > var_limit:
        raise VariableLimitError(f"{len(variables)} variables, limit is {var_limit}")
    size = len(system.constraints)
    rows = [_Row(c, _unit(i, size)) for i, c in enumerate(system.constraints)]
    plan: List[Tuple[str, int, List[Constraint]]] = []

    found = _absurd(rows)
    if found:
        return found

    while True:
        pivot = next((r for r in rows if r.constraint.rel == EQ and r.constraint.coeffs), None)
        if pivot is None:
            break
        var, a = pivot.constraint.coeffs[0]
        rows = [
            r if not r.constraint.coefficient(var) else r.plus(pivot.scale(-r.constraint.coefficient(var) / a))
            for r in rows
            if r is not pivot
        ]
        plan.append(("eq", var, [pivot.constraint]))
        found = _absurd(rows)
        if found:
            return found
    rows = _prune(rows)

    remaining = _remaining(rows)
    while remaining:
        var = _pick(rows, remaining, order)
        upper = [r for r in rows if r.constraint.coefficient(var) > 0]
        lower = [r for r in rows if r.constraint.coefficient(var) < 0]
        rest = [r for r in rows if not r.constraint.coefficient(var)]
        plan.append(("fm", var, [r.constraint for r in upper + lower]))
        for p in upper:
            for q in lower:
                cp, cq = p.constraint.coefficient(var), q.constraint.coefficient(var)
                rest.append(p.scale(-cq).plus(q.scale(cp)))
        found = _absurd(rest)
        if found:
            logger.debug(f"fm: infeasible after eliminating x{var}")
            return found
        rows = _prune(rest)
        logger.debug(f"fm: eliminated x{var}, {len(rows)} row(s) left")
        remaining = _remaining(rows)

    return Feasible(_back_substitute(plan, variables))


def _residual(constraint: Constraint, var: int, point: Dict[int, Fraction]) -> Fraction:
    return constraint.constant + sum(c * point.get(v, Fraction(0)) for v, c in constraint.coeffs if v != var)


def _choose(var: int, constraints: List[Constraint], point: Dict[int, Fraction]) -> Fraction:
    low: Optional[Tuple[Fraction, bool]] = None
    high: Optional[Tuple[Fraction, bool]] = None
    for constraint in constraints:
        a = constraint.coefficient(var)
        bound = -_residual(constraint, var, point) / a
        strict = constraint.rel == LT
        if a > 0:
            if high is None or bound < high[0] or (bound == high[0] and strict):
                high = (bound, strict)
        elif low is None or bound > low[0] or (bound == low[0] and strict):
            low = (bound, strict)
    if low is not None and high is not None:
        return (low[0] + high[0]) / 2
    if low is not None:
        return low[0] + 1 if low[1] else low[0]
    if high is not None:
        return high[0] - 1 if high[1] else high[0]
    return Fraction(0)


def _back_substitute(plan: List[Tuple[str, int, List[Constraint]]], variables: List[int]) -> Dict[int, Fraction]:
    point: Dict[int, Fraction] = {}
    for kind, var, constraints in reversed(plan):
        if kind == "eq":
            equation = constraints[0]
            point[var] = -_residual(equation, var, point) / equation.coefficient(var)
        else:
            point[var] = _choose(var, constraints, point)
    for var in variables:
        point.setdefault(var, Fraction(0))
    return point
