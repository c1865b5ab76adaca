import itertools
import random
from fractions import Fraction

import pytest

from hl_prover.linarith import EQ, LE, LT, Constraint, Infeasible, LinearSystem, check_cert, fm_decide

VARIABLES = 3


def satisfied_system(rng: random.Random):
    """Random constraints that all hold at a random integer point"""
    point = {v: Fraction(rng.randint(-5, 5)) for v in range(VARIABLES)}
    constraints = []
    for _ in range(rng.randint(2, 6)):
        coeffs = {v: rng.randint(-3, 3) for v in range(VARIABLES)}
        rel = rng.choice([LT, LE, LE, EQ])
        value = sum(c * point[v] for v, c in coeffs.items())
        slack = 0 if rel == EQ else rng.randint(1 if rel == LT else 0, 4)
        constraints.append(Constraint.of(coeffs, -value - slack, rel))
    return constraints


class TestFourierMotzkinOracle:
    """Test elimination against systems with known answers"""

    @pytest.mark.parametrize("seed", range(60))
    def test_feasible_witness(self, seed):
        """Test satisfiable systems yield a point satisfying every constraint"""
        system = LinearSystem(satisfied_system(random.Random(seed)))
        result = fm_decide(system)

        assert result.feasible
        assert all(c.holds_at(result.witness) for c in system.constraints)

    @pytest.mark.parametrize("seed", range(60))
    def test_contradiction_certified(self, seed):
        """Test a constraint plus its strict opposite is refuted with a valid certificate"""
        rng = random.Random(seed)
        constraints = satisfied_system(rng)
        target = next((c for c in constraints if c.rel != EQ and c.coeffs), None)
        if target is None:
            target = Constraint.of({0: 1}, 0, LE)
            constraints.append(target)
        opposite = Constraint.of({v: -c for v, c in target.coeffs}, -target.constant + 1, LE)
        system = LinearSystem(constraints + [opposite])
        result = fm_decide(system)

        assert isinstance(result, Infeasible)
        assert check_cert(result.certificate, system)

    @pytest.mark.parametrize("seed", range(20))
    def test_order_independent(self, seed):
        """Test the verdict does not depend on the elimination order"""
        rng = random.Random(seed)
        system = LinearSystem(satisfied_system(rng) + satisfied_system(rng))
        verdicts = {fm_decide(system, order).feasible for order in ([0, 1, 2], [2, 1, 0], [1, 0, 2])}

        assert len(verdicts) == 1


def random_system(rng: random.Random, variables: int, relations=(LT, LE, LE, EQ)):
    """Random constraints with no planted solution"""
    constraints = []
    for _ in range(rng.randint(2, 6)):
        coeffs = {v: rng.randint(-3, 3) for v in range(variables)}
        constraints.append(Constraint.of(coeffs, rng.randint(-6, 6), rng.choice(relations)))
    return constraints


def value_at(constraint, point):
    return sum(c * point.get(v, Fraction(0)) for v, c in constraint.coeffs) + constraint.constant


def satisfies(constraint, point):
    value = value_at(constraint, point)
    return {LT: value < 0, LE: value <= 0, EQ: value == 0}[constraint.rel]


def refutes(multipliers, constraints):
    """Recompute the weighted sum and check it is a false constant statement"""
    coeffs = {}
    constant = Fraction(0)
    strict = False
    for m, c in zip(multipliers, constraints):
        if m < 0 and c.rel != EQ:
            return False
        for v, a in c.coeffs:
            coeffs[v] = coeffs.get(v, Fraction(0)) + m * a
        constant += m * c.constant
        strict = strict or (m > 0 and c.rel == LT)
    if any(coeffs.values()):
        return False
    if strict:
        return constant >= 0
    if any(m and c.rel != EQ for m, c in zip(multipliers, constraints)):
        return constant > 0
    return constant != 0


def solve(rows, variables):
    """Unique solution of a square system ``a·x = b`` by exact elimination, or None"""
    matrix = [[Fraction(a) for a in row] + [Fraction(b)] for row, b in rows]
    for col in range(variables):
        pivot = next((r for r in range(col, variables) if matrix[r][col] != 0), None)
        if pivot is None:
            return None
        matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
        for r in range(variables):
            if r != col and matrix[r][col] != 0:
                factor = matrix[r][col] / matrix[col][col]
                matrix[r] = [x - factor * y for x, y in zip(matrix[r], matrix[col])]
    return {v: matrix[v][variables] / matrix[v][v] for v in range(variables)}


def has_vertex(constraints, variables):
    """A bounded non-strict system is feasible iff one of its vertices satisfies it"""
    planes = []
    for c in constraints:
        normal = [c.coefficient(v) for v in range(variables)]
        planes.append((normal, -c.constant))
    for chosen in itertools.combinations(planes, variables):
        point = solve(chosen, variables)
        if point is not None and all(satisfies(c, point) for c in constraints):
            return True
    return False


def box(variables, bound=5):
    return [Constraint.of({v: sign}, -bound, LE) for v in range(variables) for sign in (1, -1)]


class TestRandomSystems:
    """Test verdicts on unplanted random systems"""

    @pytest.mark.parametrize("seed", range(500))
    def test_verdict_carries_its_evidence(self, seed):
        """Test every verdict is backed by a point or a refuting combination checked here"""
        rng = random.Random(seed)
        constraints = random_system(rng, rng.randint(3, 5))
        system = LinearSystem(constraints)
        result = fm_decide(system)

        if result.feasible:
            assert all(satisfies(c, result.witness) for c in constraints)
        else:
            assert refutes(result.certificate.multipliers, constraints)
            assert check_cert(result.certificate, system)

    @pytest.mark.parametrize("seed", range(150))
    def test_matches_vertex_enumeration(self, seed):
        """Test bounded non-strict systems agree with vertex enumeration"""
        rng = random.Random(seed)
        variables = rng.choice((3, 4))
        constraints = random_system(rng, variables, (LE, LE, EQ)) + box(variables)

        assert fm_decide(LinearSystem(constraints)).feasible == has_vertex(constraints, variables)
