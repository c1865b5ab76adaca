import random

import pytest

from hl_prover.hierarchy import load_env, reassoc, register_pi_instance
from hl_prover.resolver import Query, check_derivation, resolve
from hl_prover.rewriter import dsimp
from hl_prover.syntax import INT, NAT, ClassAtom, Numeral, Op, RuleKind, Var, arrow, parse_class_atom
from hl_prover.syntax.terms import free_vars

NAMES = ("f", "g", "h", "x")


def random_tree(rng, names, depth):
    if depth == 0 or rng.random() < 0.35:
        return rng.choice(names)
    return (random_tree(rng, names, depth - 1), random_tree(rng, names, depth - 1))


def show(tree):
    if isinstance(tree, str):
        return tree
    return f"({show(tree[0])} ≫ {show(tree[1])})"


def leaves(tree):
    if isinstance(tree, str):
        return [tree]
    return leaves(tree[0]) + leaves(tree[1])


def word(term):
    """Leaves of a ≫-term from left to right"""
    if isinstance(term, Var):
        return [term.name]
    assert isinstance(term, Op) and term.symbol == "≫"
    return word(term.args[0]) + word(term.args[1])


def random_lemma(rng):
    lhs = (random_tree(rng, NAMES, 2), random_tree(rng, NAMES, 2))
    used = sorted(set(leaves(lhs)))
    rhs = random_tree(rng, used, 3)
    declaration = f"lemma l ({' '.join(used)} : α) : {show(lhs)} = {show(rhs)}"
    return lhs, rhs, declaration


class TestReassocOracle:
    """Test reassociated companions against words in the free semigroup"""

    @pytest.mark.parametrize("seed", range(200))
    def test_companion_rewrites_prefix(self, seed):
        """Test the companion replaces the lemma's left word by its right word, before a fresh tail"""
        lhs, rhs, declaration = random_lemma(random.Random(seed))
        env = load_env(f"[assoc] op ≫\n{declaration}")
        lemma = env.lemma("l")
        companion = reassoc(lemma, env.symbols)
        tail = companion.binders[-1].name

        assert tail not in free_vars(lemma.statement)
        assert companion.kind == RuleKind.SIMP
        assert word(companion.lhs) == leaves(lhs) + [tail]
        assert word(companion.rhs) == leaves(rhs) + [tail]
        assert companion.lhs.args[0] == lemma.statement.lhs.args[0]

    @pytest.mark.parametrize("seed", range(50))
    def test_attribute_matches_direct_call(self, seed):
        """Test the [reassoc] attribute registers the same companion"""
        _, _, declaration = random_lemma(random.Random(seed))
        lemma = load_env(f"[assoc] op ≫\n{declaration}").lemma("l")
        tagged = load_env(f"[assoc] op ≫\n[reassoc] {declaration}")
        registered = tagged.rewrite_rule("l_assoc")
        companion = reassoc(lemma, tagged.symbols)

        assert (registered.lhs, registered.rhs) == (companion.lhs, companion.rhs)


@pytest.fixture
def monoid_env():
    env = load_env(
        """
/-- Monoids. -/
class monoid (a) { * ; 1 }
instance monoid_int : monoid(Z)
"""
    )
    return register_pi_instance(env, "monoid", parse_class_atom("monoid(a)", env), NAT)


def nested(depth):
    sort = INT
    for _ in range(depth):
        sort = arrow(NAT, sort)
    return sort


def apply_all(term, points):
    for point in points:
        sort = term.sort.codomain
        term = Op("app", (term, point), sort)
    return term


class TestPiComposition:
    """Test lifting composes through repeated function spaces"""

    @pytest.mark.parametrize("depth", range(1, 5))
    def test_resolves_through_every_layer(self, monoid_env, depth):
        """Test monoid on nat -> ... -> Z uses the lifted instance once per arrow"""
        goal = ClassAtom("monoid", (nested(depth),))
        result = resolve(Query(goal), monoid_env)

        assert result.success
        assert list(result.derivation.rules_used()) == ["pi_monoid"] * depth + ["monoid_int"]
        assert check_derivation(result.derivation, goal, monoid_env)

    @pytest.mark.parametrize("depth", range(1, 5))
    def test_pointwise_rules_compose(self, monoid_env, depth):
        """Test applying a lifted product unfolds to the product of applications"""
        f, g = Var("f", nested(depth)), Var("g", nested(depth))
        points = [Var(f"n{i}", NAT) for i in range(depth)]
        product = apply_all(Op("*", (f, g), nested(depth)), points)
        expected = Op("*", (apply_all(f, points), apply_all(g, points)), INT)

        assert dsimp(product, monoid_env) == expected
        assert dsimp(apply_all(Numeral.of_int(1, nested(depth)), points), monoid_env) == Numeral.of_int(1, INT)
