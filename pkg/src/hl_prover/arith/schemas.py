"""
Rewrite schemas of the ring and abel normalizers.

Each schema is an identity of commutative (semi)rings or additive groups,
written in the surface syntax over the sort variable ``r``. Literal and
exponent arithmetic appears as side conditions on the bindings, so a trace
step is checked by matching, evaluating the condition and instantiating.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from ..prooftrace import TraceStep
from ..syntax import INT, NAT, Numeral, Position, Rel, Sort, Substitution, Term, instantiate, match, sort_var
from ..syntax.parser import parse_term
from ..syntax.sorts import sort_vars, substitute_sort
from ..syntax.terms import replace_at, subterm_at, term_vars
from .literals import literal_value

Condition = Callable[[Substitution], bool]

RING_SORT = sort_var("r")
SCALAR_SORT = sort_var("z")
OTHER_SCALAR_SORT = sort_var("w")


@dataclass(frozen=True)
class Schema:
    name: str
    lhs: Term
    rhs: Term
    condition: Optional[Condition] = field(default=None, compare=False)
    needs_neg: bool = False

    def holds(self, subst: Substitution) -> bool:
        return self.condition is None or bool(self.condition(subst))


def _lit(subst: Substitution, name: str) -> Optional[int]:
    term = subst.terms.get(name)
    return None if term is None else literal_value(term)


def _exp(subst: Substitution, name: str) -> Optional[int]:
    term = subst.terms.get(name)
    if isinstance(term, Numeral) and term.sort == NAT:
        return term.value
    return None


def _literals(subst: Substitution, *names: str) -> Optional[List[int]]:
    values = [_lit(subst, n) for n in names]
    return None if any(v is None for v in values) else values


def _exponents(subst: Substitution, *names: str) -> Optional[List[int]]:
    values = [_exp(subst, n) for n in names]
    return None if any(v is None for v in values) else values


def _const_add(s: Substitution) -> bool:
    v = _literals(s, "k1", "k2", "k3")
    return v is not None and v[2] == v[0] + v[1]


def _const_mul(s: Substitution) -> bool:
    v = _literals(s, "k1", "k2", "k3")
    return v is not None and v[2] == v[0] * v[1]


def _const_pow(s: Substitution) -> bool:
    v = _literals(s, "k1", "k3")
    n = _exp(s, "n")
    return v is not None and n is not None and v[1] == v[0] ** n


def _exp_sum(result: str, left: str, right: str, positive: Optional[str] = None) -> Condition:
    def condition(s: Substitution) -> bool:
        v = _exponents(s, result, left, right)
        if v is None:
            return False
        if positive is not None and _exp(s, positive) < 1:
            return False
        return v[0] == v[1] + v[2]

    return condition


def _monomial_pow(s: Substitution) -> bool:
    v = _exponents(s, "m", "n", "k")
    return v is not None and v[0] == v[1] * v[2]


def _pow_bit(odd: int) -> Condition:
    def condition(s: Substitution) -> bool:
        v = _exponents(s, "k", "n")
        return v is not None and v[1] >= 1 and v[0] == 2 * v[1] + odd

    return condition


def _scalar_add(s: Substitution) -> bool:
    v = _literals(s, "k", "j", "l")
    return v is not None and v[2] == v[0] + v[1]


def _scalar_neg(s: Substitution) -> bool:
    v = _literals(s, "k", "l")
    return v is not None and v[1] == -v[0]


def _scalar_mul(s: Substitution) -> bool:
    v = _literals(s, "k", "j", "l")
    return v is not None and v[2] == v[0] * v[1]


def _const_neg(s: Substitution) -> bool:
    v = _literals(s, "k1", "k3")
    return v is not None and v[1] == -v[0]


def _const_smul(s: Substitution) -> bool:
    v = _literals(s, "k", "k1", "k3")
    return v is not None and v[2] == v[0] * v[1]


def _smul_cast(s: Substitution) -> bool:
    v = _literals(s, "k", "j")
    target = s.sorts.get("w")
    return v is not None and v[0] == v[1] and target in (NAT, INT)


_EXPONENTS = {"n": NAT, "m": NAT, "k": NAT}

# name, text, extra variable sorts, condition, needs additive inverses
_RING_TABLE: Tuple[tuple, ...] = (
    ("zero_add", "0 + a = a", None, None, False),
    ("add_zero", "a + 0 = a", None, None, False),
    ("const_add", "k1 + k2 = k3", None, _const_add, False),
    ("add_horner_left", "(a * x ^ n + b) + c = a * x ^ n + (b + c)", _EXPONENTS, None, False),
    ("add_horner_right", "c + (a * x ^ n + b) = a * x ^ n + (c + b)", _EXPONENTS, None, False),
    ("add_horner_same", "(a * x ^ n + b) + (c * x ^ n + d) = (a + c) * x ^ n + (b + d)", _EXPONENTS, None, False),
    (
        "add_horner_lt",
        "(a * x ^ n + b) + (c * x ^ m + d) = (a + (c * x ^ k + 0)) * x ^ n + (b + d)",
        _EXPONENTS,
        _exp_sum("m", "n", "k", positive="k"),
        False,
    ),
    (
        "add_horner_gt",
        "(a * x ^ n + b) + (c * x ^ m + d) = ((a * x ^ k + 0) + c) * x ^ m + (b + d)",
        _EXPONENTS,
        _exp_sum("n", "m", "k", positive="k"),
        False,
    ),
    ("zero_mul_horner", "0 * x ^ n + b = b", _EXPONENTS, None, False),
    ("horner_merge", "(a * x ^ k + 0) * x ^ n + b = a * x ^ m + b", _EXPONENTS, _exp_sum("m", "k", "n"), False),
    ("horner_split", "a * x ^ n + b = (a * x ^ n + 0) + b", _EXPONENTS, None, False),
    ("zero_mul", "0 * a = 0", None, None, False),
    ("mul_zero", "a * 0 = 0", None, None, False),
    ("const_mul", "k1 * k2 = k3", None, _const_mul, False),
    ("horner_mul", "(a * x ^ n + b) * c = (a * c) * x ^ n + b * c", _EXPONENTS, None, False),
    ("mul_horner", "c * (a * x ^ n + b) = (c * a) * x ^ n + c * b", _EXPONENTS, None, False),
    ("pow_zero", "a ^ 0 = 1", None, None, False),
    ("pow_one", "a ^ 1 = a", None, None, False),
    ("const_pow", "k1 ^ n = k3", _EXPONENTS, _const_pow, False),
    ("monomial_pow", "(a * x ^ n + 0) ^ k = a ^ k * x ^ m + 0", _EXPONENTS, _monomial_pow, False),
    ("pow_bit0", "a ^ k = (a ^ n) ^ 2", _EXPONENTS, _pow_bit(0), False),
    ("pow_bit1", "a ^ k = (a ^ n) ^ 2 * a", _EXPONENTS, _pow_bit(1), False),
    ("pow_two", "a ^ 2 = a * a", None, None, False),
    ("atom_intro", "a = 1 * a ^ 1 + 0", None, None, False),
    ("sub_eq_add_neg", "a - b = a + -b", None, None, True),
    ("neg_eq_neg_one_mul", "-a = -1 * a", None, None, True),
)

_SCALARS = {"k": SCALAR_SORT, "j": SCALAR_SORT, "l": SCALAR_SORT}

_ABEL_TABLE: Tuple[tuple, ...] = (
    ("const_add", "k1 + k2 = k3", None, _const_add, False),
    ("sub_eq_add_neg", "a - b = a + -b", None, None, True),
    ("abel_atom", "a = (1 : z) • a + 0", None, None, False),
    ("abel_add_left", "(k • a + p) + q = k • a + (p + q)", _SCALARS, None, False),
    ("abel_add_right", "p + (k • a + q) = k • a + (p + q)", _SCALARS, None, False),
    ("abel_add_same", "(k • a + p) + (j • a + q) = l • a + (p + q)", _SCALARS, _scalar_add, False),
    ("abel_zero_smul", "(0 : z) • a + p = p", None, None, False),
    ("abel_neg_add", "-(k • a + p) = l • a + -p", _SCALARS, _scalar_neg, True),
    ("const_neg", "-k1 = k3", None, _const_neg, True),
    ("abel_smul_add", "k • (j • a + p) = l • a + k • p", _SCALARS, _scalar_mul, False),
    ("const_smul", "k • k1 = k3", _SCALARS, _const_smul, False),
    ("zero_smul", "(0 : z) • a = 0", None, None, False),
    ("smul_cast", "k • a = j • a", {"k": SCALAR_SORT, "j": OTHER_SCALAR_SORT}, _smul_cast, False),
)


def _build(table: Tuple[tuple, ...]) -> Dict[str, Schema]:
    schemas: Dict[str, Schema] = {}
    for name, text, variables, condition, needs_neg in table:
        statement = parse_term(text, None, sort=RING_SORT, variables=variables)
        if not isinstance(statement, Rel):
            raise ValueError(f"schema {name} is not an equation")
        schemas[name] = Schema(name, statement.lhs, statement.rhs, condition, needs_neg)
    return schemas


@lru_cache(maxsize=None)
def ring_schemas() -> Dict[str, Schema]:
    return _build(_RING_TABLE)


@lru_cache(maxsize=None)
def abel_schemas() -> Dict[str, Schema]:
    return _build(_ABEL_TABLE)


def schema_problem(schema: Schema, before: Term, subst: Substitution, after: Term) -> Optional[str]:
    """Why ``before`` does not rewrite to ``after`` by ``schema`` under ``subst``; None when it does"""
    if instantiate(schema.lhs, subst) != before:
        return f"{schema.name}: left-hand side does not match"
    for pattern in (schema.lhs, schema.rhs):
        for name, pattern_sort in term_vars(pattern).items():
            bound = subst.terms.get(name)
            if bound is None:
                return f"{schema.name}: variable {name} is unbound"
            for sort_name in sort_vars(pattern_sort):
                if sort_name not in subst.sorts:
                    return f"{schema.name}: sort variable {sort_name} is unbound"
            if bound.sort != substitute_sort(pattern_sort, subst.sorts):
                return f"{schema.name}: {name} has the wrong sort"
    if not schema.holds(subst):
        return f"{schema.name}: side condition fails"
    if instantiate(schema.rhs, subst) != after:
        return f"{schema.name}: result differs from the instantiated right-hand side"
    return None


class StepRecorder:
    """Rewrites a statement in place by schemas and records each step"""

    def __init__(self, statement: Term, schemas: Dict[str, Schema]):
        self.statement = statement
        self.schemas = schemas
        self.steps: List[TraceStep] = []

    def at(self, position: Position) -> Term:
        return subterm_at(self.statement, position)

    def apply(
        self,
        name: str,
        position: Position,
        sorts: Optional[Dict[str, Sort]] = None,
        **extra: Term,
    ) -> Term:
        schema = self.schemas[name]
        subst = match(schema.lhs, self.at(position))
        if subst is None:
            raise RuntimeError(f"schema {name} does not match at {list(position)}")
        subst.terms.update(extra)
        subst.sorts.update(sorts or {})
        if not schema.holds(subst):
            raise RuntimeError(f"side condition of {name} fails at {list(position)}")
        after = instantiate(schema.rhs, subst)
        self.record(name, position, subst, after)
        return after

    def record(self, justification: str, position: Position, subst: Substitution, after: Term) -> None:
        self.statement = replace_at(self.statement, position, after)
        self.steps.append(TraceStep(justification, position, subst, self.statement))
