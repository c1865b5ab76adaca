import operator
import random

import pytest

from hl_prover.decide import decide, replay
from hl_prover.syntax import parse_statement

RELATIONS = {
    "=": operator.eq,
    "≠": operator.ne,
    "<": operator.lt,
    "≤": operator.le,
}


class RandomProps:
    """Random closed propositions over nat, each paired with a Python evaluator"""

    def __init__(self, rng: random.Random, max_quantifiers: int = 3):
        self.rng = rng
        self.quantifiers_left = max_quantifiers
        self.fresh = 0

    def term(self, scope, depth):
        rng = self.rng
        if depth == 0 or rng.random() < 0.4:
            if scope and rng.random() < 0.6:
                name = rng.choice(scope)
                return name, lambda env: env[name]
            value = rng.randint(0, 8)
            return str(value), lambda env: value
        left, left_eval = self.term(scope, depth - 1)
        right, right_eval = self.term(scope, depth - 1)
        if rng.random() < 0.5:
            return f"({left} + {right})", lambda env: left_eval(env) + right_eval(env)
        return f"({left} * {right})", lambda env: left_eval(env) * right_eval(env)

    def relation(self, scope):
        lhs, lhs_eval = self.term(scope, 2)
        if self.rng.random() < 0.2:
            divisor = self.rng.randint(1, 4)
            return f"{divisor} ∣ {lhs}", lambda env: lhs_eval(env) % divisor == 0
        rhs, rhs_eval = self.term(scope, 2)
        symbol, holds = self.rng.choice(list(RELATIONS.items()))
        return f"{lhs} {symbol} {rhs}", lambda env: holds(lhs_eval(env), rhs_eval(env))

    def prop(self, scope, depth):
        rng = self.rng
        if depth <= 1 or rng.random() < 0.25:
            return self.relation(scope)
        kinds = ["and", "or", "not", "implies"]
        if self.quantifiers_left:
            kinds += ["forall", "forall"]
        kind = rng.choice(kinds)
        if kind == "forall":
            self.quantifiers_left -= 1
            self.fresh += 1
            var, bound = f"v{self.fresh}", rng.randint(0, 8)
            body, body_eval = self.prop(scope + [var], depth - 1)
            return (
                f"(forall {var} < {bound}, {body})",
                lambda env: all(body_eval({**env, var: i}) for i in range(bound)),
            )
        if kind == "not":
            arg, arg_eval = self.prop(scope, depth - 1)
            return f"~({arg})", lambda env: not arg_eval(env)
        left, left_eval = self.prop(scope, depth - 1)
        right, right_eval = self.prop(scope, depth - 1)
        if kind == "and":
            return f"({left} ∧ {right})", lambda env: left_eval(env) and right_eval(env)
        if kind == "or":
            return f"({left} ∨ {right})", lambda env: left_eval(env) or right_eval(env)
        return f"({left} → {right})", lambda env: (not left_eval(env)) or right_eval(env)


class TestDecideOracle:
    """Test evaluation against direct enumeration"""

    @pytest.mark.parametrize("seed", range(40))
    def test_bounded_quantifiers(self, seed):
        """Test nested bounded propositions agree with Python and replay cleanly"""
        rng = random.Random(seed)
        k, j, m, d = rng.randint(0, 6), rng.randint(0, 6), rng.randint(0, 40), rng.randint(1, 4)
        source = f"forall x < {k}, forall y < {j}, x * y < {m} \\/ ~(x + y ≤ {m}) \\/ {d} ∣ x"
        expected = all(
            x * y < m or not (x + y <= m) or x % d == 0 for x in range(k) for y in range(j)
        )
        prop, _ = parse_statement(source)
        value, evidence = decide(prop)

        assert value == expected
        assert replay(prop, evidence) is None

    @pytest.mark.parametrize("seed", range(500))
    def test_random_propositions(self, seed):
        """Test random propositions of depth at most 5 with bounds at most 8"""
        source, oracle = RandomProps(random.Random(seed)).prop([], 5)
        prop, _ = parse_statement(source)
        value, evidence = decide(prop)

        assert value == oracle({}), source
        assert replay(prop, evidence) is None
