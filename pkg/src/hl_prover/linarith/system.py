"""
Linear constraints ``Σ c·x + constant REL 0`` with exact rational coefficients.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

LT = "<"
LE = "≤"
EQ = "="

RELATIONS = (LT, LE, EQ)

Coefficients = Tuple[Tuple[int, Fraction], ...]


def _frac(value: Any) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class Constraint:
    coeffs: Coefficients
    constant: Fraction
    rel: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown constraint relation {self.rel!r}")

    @classmethod
    def of(cls, coeffs: Mapping[int, Any], constant: Any = 0, rel: str = LE) -> "Constraint":
        cleaned = tuple(sorted((v, _frac(c)) for v, c in coeffs.items() if c != 0))
        return cls(cleaned, _frac(constant), rel)

    @property
    def coefficient_map(self) -> Dict[int, Fraction]:
        return dict(self.coeffs)

    def coefficient(self, var: int) -> Fraction:
        return self.coefficient_map.get(var, Fraction(0))

    @property
    def variables(self) -> List[int]:
        return [v for v, _ in self.coeffs]

    @property
    def strict(self) -> bool:
        return self.rel == LT

    def scale(self, factor: Any) -> "Constraint":
        factor = _frac(factor)
        if factor < 0 and self.rel != EQ:
            raise ValueError("inequalities only scale by nonnegative factors")
        return Constraint.of({v: c * factor for v, c in self.coeffs}, self.constant * factor, self.rel)

    def plus(self, other: "Constraint") -> "Constraint":
        coeffs = self.coefficient_map
        for v, c in other.coeffs:
            coeffs[v] = coeffs.get(v, Fraction(0)) + c
        return Constraint.of(coeffs, self.constant + other.constant, join_relations(self.rel, other.rel))

    def negate(self) -> "Constraint":
        """``¬(e < 0)`` is ``-e ≤ 0`` and ``¬(e ≤ 0)`` is ``-e < 0``"""
        if self.rel == EQ:
            raise ValueError("the negation of an equality is not a constraint")
        flipped = LE if self.rel == LT else LT
        return Constraint.of({v: -c for v, c in self.coeffs}, -self.constant, flipped)

    @property
    def is_constant(self) -> bool:
        return not self.coeffs

    @property
    def is_absurd(self) -> bool:
        """No variables and ``constant REL 0`` is false"""
        if self.coeffs:
            return False
        if self.rel == LT:
            return self.constant >= 0
        if self.rel == LE:
            return self.constant > 0
        return self.constant != 0

    def holds_at(self, point: Mapping[int, Fraction]) -> bool:
        value = self.constant + sum(c * point.get(v, Fraction(0)) for v, c in self.coeffs)
        if self.rel == LT:
            return value < 0
        if self.rel == LE:
            return value <= 0
        return value == 0

    def render(self, names: Optional[Mapping[int, str]] = None) -> str:
        names = names or {}
        parts = [f"{c}·{names.get(v, f'x{v}')}" for v, c in self.coeffs]
        if self.constant or not parts:
            parts.append(str(self.constant))
        return f"{' + '.join(parts)} {self.rel} 0"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coeffs": {str(v): str(c) for v, c in self.coeffs},
            "constant": str(self.constant),
            "rel": self.rel,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Constraint":
        coeffs = {int(v): Fraction(c) for v, c in data.get("coeffs", {}).items()}
        return cls.of(coeffs, Fraction(data.get("constant", "0")), data["rel"])


def join_relations(left: str, right: str) -> str:
    """Relation of a sum of two constraints"""
    if LT in (left, right):
        return LT
    if left == EQ and right == EQ:
        return EQ
    return LE


@dataclass
class LinearSystem:
    constraints: List[Constraint] = field(default_factory=list)
    integer: bool = False
    names: Dict[int, str] = field(default_factory=dict)

    def variables(self) -> List[int]:
        seen = set()
        for constraint in self.constraints:
            seen.update(constraint.variables)
        return sorted(seen)

    def with_constraints(self, constraints: Iterable[Constraint]) -> "LinearSystem":
        return LinearSystem(list(constraints), self.integer, dict(self.names))

    def render(self) -> List[str]:
        return [c.render(self.names) for c in self.constraints]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sort": "int" if self.integer else "rational",
            "constraints": [c.to_dict() for c in self.constraints],
            "names": {str(k): v for k, v in self.names.items()},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "LinearSystem":
        return cls(
            [Constraint.from_dict(c) for c in data.get("constraints", [])],
            data.get("sort") == "int",
            {int(k): v for k, v in data.get("names", {}).items()},
        )
