import random
from collections import deque

import pytest

from hl_prover.hierarchy import load_env
from hl_prover.rewriter import dsimp, simp
from hl_prover.syntax import INT, Numeral, Op, RuleKind, Var, instantiate, match
from hl_prover.syntax.terms import iter_subterms, replace_at

POOL = {
    "add_zero": "simp lemma add_zero (x : a) : x + 0 = x",
    "zero_add": "simp lemma zero_add (x : a) : 0 + x = x",
    "mul_one": "simp lemma mul_one (x : a) : x * 1 = x",
    "one_mul": "simp lemma one_mul (x : a) : 1 * x = x",
    "mul_zero": "simp lemma mul_zero (x : a) : x * 0 = 0",
    "zero_mul": "simp lemma zero_mul (x : a) : 0 * x = 0",
    "neg_neg": "simp lemma neg_neg (x : a) : -(-x) = x",
    "sub_self": "simp lemma sub_self (x : a) : x - x = 0",
    "double": "def lemma double (x : a) : x + x = 2 * x",
}


def random_term(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return Var(rng.choice("xy"), INT)
        return Numeral.of_int(rng.choice((0, 1, 2)), INT)
    symbol = rng.choice(("+", "+", "*", "*", "-", "neg"))
    if symbol == "neg":
        return Op("neg", (random_term(rng, depth - 1),), INT)
    return Op(symbol, (random_term(rng, depth - 1), random_term(rng, depth - 1)), INT)


def successors(term, rules):
    for position, sub in iter_subterms(term):
        for rule in rules:
            subst = match(rule.lhs, sub)
            if subst is not None:
                yield replace_at(term, position, instantiate(rule.rhs, subst))


def normal_forms(term, rules):
    """Every irreducible term reachable by rewriting anywhere, in any order"""
    seen, queue, irreducible = {term}, deque([term]), set()
    while queue:
        current = queue.popleft()
        reducts = set(successors(current, rules))
        if not reducts:
            irreducible.add(current)
        for reduct in reducts - seen:
            seen.add(reduct)
            queue.append(reduct)
    return irreducible


class TestSimpOracle:
    """Test simp against exhaustive rewriting in every order"""

    @pytest.mark.parametrize("seed", range(300))
    def test_unique_normal_form(self, seed):
        """Test simp reaches the normal form when all rewrite orders agree"""
        rng = random.Random(seed)
        names = rng.sample(sorted(POOL), rng.randint(1, 5))
        env = load_env("\n".join(POOL[name] for name in names))
        rules = env.rewrite_rules
        term = random_term(rng, 3)
        forms = normal_forms(term, rules)
        result, trace = simp(term, rules, env)

        assert not list(successors(result, rules))
        assert result in forms
        if len(forms) == 1:
            assert {result} == forms
        assert trace.replay() == result


class TestDsimpOracle:
    """Test dsimp against simp restricted to definitional rules"""

    @pytest.fixture(scope="class")
    def env(self):
        return load_env("\n".join(POOL.values()))

    @pytest.mark.parametrize("seed", range(200))
    def test_agrees_with_def_only_simp(self, seed, env):
        """Test dsimp leaves no definitional redex and matches simp over def rules"""
        term = random_term(random.Random(seed), 3)
        definitions = env.rules_of_kind(RuleKind.DEF)
        result = dsimp(term, env)

        assert result == simp(term, definitions, env)[0]
        assert result in normal_forms(term, definitions)
        assert not list(successors(result, definitions))
