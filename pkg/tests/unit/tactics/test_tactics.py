import pytest

from hl_prover.hierarchy import empty_env, load_env
from hl_prover.prooftrace import Terminal
from hl_prover.syntax import INT, Binder, Hypothesis, parse_class_atom, parse_statement, parse_term
from hl_prover.tactics import (
    DecTrivialTactic,
    LinarithTactic,
    NormNumTactic,
    ResolveTactic,
    RingTactic,
    SimpTactic,
    TacticContext,
    get_default_tactics,
    is_reflexive,
    tactics_for,
)


@pytest.fixture
def context():
    return TacticContext(empty_env())


class TestRegistry:
    """Test the tactic registry"""

    def test_names_match_registry(self):
        """Test every tactic reports the name it is registered under"""
        for name, cls in get_default_tactics().items():
            assert cls().name == name

    def test_class_goals(self, structures_env):
        """Test only resolve applies to class goals"""
        names = [t.name for t in tactics_for(parse_class_atom("monoid(Z)", structures_env))]

        assert names == ["resolve"]

    def test_inequalities(self):
        """Test equation-only tactics are skipped for <"""
        names = [t.name for t in tactics_for(parse_term("1 + 2 < 4"))]

        assert names == ["dec_trivial", "dsimp", "norm_num", "simp", "norm_cast", "linarith"]

    def test_equations_by_priority(self):
        """Test candidates are ordered by priority"""
        tactics = tactics_for(parse_term("a = a"))
        priorities = [t.priority for t in tactics]

        assert priorities == sorted(priorities)
        assert {"ring", "abel"} <= {t.name for t in tactics}

    def test_propositions(self):
        """Test compound propositions only go to dec_trivial"""
        statement, _ = parse_statement("forall n < 3, n < 4")

        assert [t.name for t in tactics_for(statement)] == ["dec_trivial"]


class TestApply:
    """Test tactic application"""

    def test_unsupported_goal(self, context):
        """Test a tactic refuses goals outside its fragment"""
        result = RingTactic().apply(parse_term("a < b", sort=INT), context)

        assert not result.proved
        assert "does not apply" in result.message

    def test_errors_become_failures(self, context):
        """Test engine errors are reported, not raised"""
        result = RingTactic().apply(parse_term("a - a = 0"), context)

        assert not result.proved
        assert result.metadata["error_type"] == "UnsupportedSymbolError"

    def test_norm_num_false(self, context):
        """Test a false literal relation fails with both values"""
        result = NormNumTactic().apply(parse_term("2 + 2 = 5"), context)

        assert not result.proved
        assert (result.metadata["lhs"], result.metadata["rhs"]) == (4, 5)

    def test_trace_is_stamped(self):
        """Test proved traces carry the goal's binders and hypotheses"""
        binders = (Binder("a", INT), Binder("b", INT))
        hypotheses = (Hypothesis("h", parse_term("a < b", sort=INT)),)
        context = TacticContext(empty_env(), binders, hypotheses, INT)
        result = LinarithTactic().apply(parse_term("a ≤ b", sort=INT), context)

        assert result.proved
        assert result.trace.binders == binders
        assert result.trace.hypotheses == hypotheses
        assert result.trace.default_sort == INT

    def test_resolve_options(self, structures_env):
        """Test search options reach the resolver"""
        atom = parse_class_atom("monoid(Z)", structures_env)
        shallow = ResolveTactic().apply(atom, TacticContext(structures_env, options={"max_depth": 1}))
        deep = ResolveTactic().apply(atom, TacticContext(structures_env, options={"strategy": "bidir"}))

        assert not shallow.proved
        assert "depth_exceeded" in shallow.message
        assert deep.proved
        assert deep.trace.terminal == Terminal.DERIVATION

    def test_dec_trivial_refuted(self, context):
        """Test a false proposition fails"""
        statement, _ = parse_statement("forall n < 6, n < 5")
        result = DecTrivialTactic().apply(statement, context)

        assert not result.proved
        assert result.metadata["nodes"] > 1

    def test_simp_open_goal(self):
        """Test simp reports the normal form it got stuck on"""
        env = load_env("simp lemma add_zero (x : a) : x + 0 = x")
        result = SimpTactic().apply(parse_term("x + 0 = y", env, INT), TacticContext(env))

        assert not result.proved
        assert result.metadata["normal_form"] == parse_term("x = y", env, INT)

    def test_simpset_option(self):
        """Test the simpset option restricts the rules"""
        env = load_env("simp lemma add_zero (x : a) : x + 0 = x\nsimp lemma zero_add (x : a) : 0 + x = x")
        goal = parse_term("0 + x = x", env, INT)

        assert SimpTactic().apply(goal, TacticContext(env)).proved
        assert not SimpTactic().apply(goal, TacticContext(env, options={"simpset": "add_zero"})).proved

    def test_reflexive(self):
        """Test reflexivity covers = and ≤ only"""
        assert is_reflexive(parse_term("a = a"))
        assert is_reflexive(parse_term("a ≤ a"))
        assert not is_reflexive(parse_term("a < a"))
