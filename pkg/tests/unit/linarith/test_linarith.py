import math
import random
from fractions import Fraction

import pytest

from hl_prover.core.base import ModuleStatus
from hl_prover.core.exceptions import UnsupportedSymbolError, VariableLimitError
from hl_prover.linarith import (
    EQ,
    LE,
    LT,
    Certificate,
    Constraint,
    Feasible,
    Infeasible,
    Linarith,
    LinearSystem,
    Unknown,
    check_cert,
    combine,
    fm_decide,
    int_tighten,
    linarith_goal,
    tighten,
)
from hl_prover.prooftrace import ProofTrace, Terminal
from hl_prover.syntax import INT, NAT, RAT, parse_term


def rels(*sources, sort=RAT):
    return [parse_term(s, sort=sort) for s in sources]


class TestFourierMotzkin:
    """Test elimination and certificates"""

    @pytest.fixture
    def contradiction(self):
        # x > 1 and x ≤ 0
        return LinearSystem([Constraint.of({0: -1}, 1, LT), Constraint.of({0: 1}, 0, LE)])

    def test_infeasible_with_certificate(self, contradiction):
        """Test an absurd system is refuted by a checkable certificate"""
        result = fm_decide(contradiction)

        assert isinstance(result, Infeasible)
        assert check_cert(result.certificate, contradiction)
        assert combine(contradiction, result.certificate.multipliers).is_absurd

    def test_feasible_with_witness(self):
        """Test a satisfiable system returns a point satisfying every constraint"""
        system = LinearSystem(
            [
                Constraint.of({0: 1, 1: -1}, 0, LT),
                Constraint.of({1: 1}, -3, LE),
                Constraint.of({0: -1}, 0, LE),
            ]
        )
        result = fm_decide(system)

        assert isinstance(result, Feasible)
        assert all(c.holds_at(result.witness) for c in system.constraints)

    def test_equalities_substituted(self):
        """Test equalities are eliminated first"""
        system = LinearSystem([Constraint.of({0: 1, 1: -1}, 0, EQ), Constraint.of({0: 1, 1: -1}, 1, LE)])

        assert isinstance(fm_decide(system), Infeasible)

    def test_variable_limit(self):
        """Test systems above the variable limit are refused"""
        system = LinearSystem([Constraint.of({i: 1 for i in range(13)}, 0, LE)])
        with pytest.raises(VariableLimitError):
            fm_decide(system)

    def test_bad_certificates(self, contradiction):
        """Test negative inequality multipliers and wrong lengths are rejected"""
        assert not check_cert(Certificate((Fraction(-1), Fraction(1))), contradiction)
        assert not check_cert(Certificate((Fraction(1),)), contradiction)
        assert not check_cert(Certificate((Fraction(0), Fraction(0))), contradiction)


class TestTighten:
    """Test integer bound tightening"""

    def test_strict_becomes_non_strict(self):
        """Test 2x - 1 < 0 tightens to x ≤ 0"""
        assert tighten(Constraint.of({0: 2}, -1, LT)) == Constraint.of({0: 1}, 0, LE)

    def test_unsolvable_equality(self):
        """Test 2x = 1 has no integer solution"""
        assert tighten(Constraint.of({0: 2}, -1, EQ)).is_absurd

    def test_system_keeps_names(self):
        """Test every constraint of a system is tightened"""
        system = LinearSystem([Constraint.of({0: 2}, -1, LT), Constraint.of({0: 3}, -3, LE)], True, {0: "x"})
        tightened = int_tighten(system)

        assert tightened.constraints == [Constraint.of({0: 1}, 0, LE), Constraint.of({0: 1}, -1, LE)]
        assert tightened.names == {0: "x"}
        assert tightened.integer

    @pytest.mark.parametrize("seed", range(300))
    def test_same_integer_points(self, seed):
        """Test a constraint and its tightening agree on every point of a box"""
        rng = random.Random(seed)
        coeffs = {0: rng.randint(-6, 6), 1: rng.randint(-6, 6)}
        if not any(coeffs.values()):
            coeffs[0] = rng.choice((-4, 4))
        constraint = Constraint.of(coeffs, Fraction(rng.randint(-30, 30), rng.randint(1, 3)), rng.choice((LT, LE, EQ)))
        tightened = tighten(constraint)

        assert tightened.rel in (LE, EQ)
        if tightened.coeffs:
            assert all(c.denominator == 1 for _, c in tightened.coeffs)
            assert math.gcd(*(int(c) for _, c in tightened.coeffs)) == 1
        for x in range(-10, 11):
            for y in range(-10, 11):
                point = {0: Fraction(x), 1: Fraction(y)}
                assert constraint.holds_at(point) == tightened.holds_at(point), (constraint, point)


class TestLinarithGoal:
    """Test goals over terms"""

    def test_transitivity(self):
        """Test a ≤ b, b ≤ c proves a ≤ c"""
        trace = linarith_goal(rels("a ≤ b", "b ≤ c"), parse_term("a ≤ c", sort=RAT))

        assert isinstance(trace, ProofTrace)
        assert trace.terminal == Terminal.CERTIFICATE
        assert [h.name for h in trace.hypotheses] == ["h0", "h1"]
        assert len(trace.evidence.certificates) == 1

    def test_equality_needs_two_refutations(self):
        """Test an equality goal is split into two strict negations"""
        trace = linarith_goal(rels("a ≤ b", "b ≤ a"), parse_term("a = b", sort=RAT))

        assert isinstance(trace, ProofTrace)
        assert len(trace.evidence.systems) == 2

    def test_counterexample(self):
        """Test a non-entailed goal returns a rational counterexample"""
        result = linarith_goal(rels("a < b"), parse_term("a + 1 ≤ b", sort=RAT))

        assert isinstance(result, Unknown)
        assert "counterexample" in str(result)

    def test_integer_tightening(self):
        """Test a < b proves a + 1 ≤ b over int"""
        trace = linarith_goal(rels("a < b", sort=INT), parse_term("a + 1 ≤ b", sort=INT))

        assert isinstance(trace, ProofTrace)

    def test_nat_nonnegativity(self):
        """Test nat variables are nonnegative"""
        assert isinstance(linarith_goal([], parse_term("0 ≤ x", sort=NAT)), ProofTrace)

    def test_opaque_monomials(self):
        """Test nonlinear monomials are treated as variables"""
        trace = linarith_goal(rels("x * y ≤ 1"), parse_term("x * y < 2", sort=RAT))

        assert isinstance(trace, ProofTrace)

    def test_unsupported_goal(self):
        """Test ≠ goals are outside linarith"""
        with pytest.raises(UnsupportedSymbolError):
            linarith_goal([], parse_term("a ≠ b", sort=RAT))


class TestLinarithModule:
    """Test the Linarith engine module"""

    @pytest.fixture
    def linarith(self):
        return Linarith({"var_limit": 8})

    def test_ready(self, linarith):
        """Test a valid configuration initializes"""
        assert linarith.status == ModuleStatus.READY

    def test_invalid_limit(self):
        """Test a zero variable limit puts the module in error"""
        assert Linarith({"var_limit": 0}).status == ModuleStatus.ERROR

    def test_execute_goal(self, linarith):
        """Test goals given as text are proved"""
        result = linarith.execute({"goal": "a <= c", "hyps": ["a <= b", "b <= c"]})

        assert result.success
        assert len(result.metadata["certificates"]) == 1

    def test_execute_counterexample(self, linarith):
        """Test a failed goal carries the witness"""
        result = linarith.execute({"goal": "a < b"})

        assert not result.success
        assert "witness" in result.metadata

    def test_execute_system(self, linarith):
        """Test raw systems are decided"""
        system = LinearSystem([Constraint.of({0: 1}, -3, LE)])
        result = linarith.execute({"system": system})

        assert result.success
        assert result.metadata["feasible"] is True

    def test_bad_input(self, linarith):
        """Test input without goal or system is rejected"""
        assert not linarith.execute({"hyps": []}).success
