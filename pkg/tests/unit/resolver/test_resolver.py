import pytest

from hl_prover.core.base import ModuleStatus
from hl_prover.core.exceptions import ResolutionError
from hl_prover.hierarchy import generate, load_env
from hl_prover.resolver import (
    Derivation,
    Outcome,
    Query,
    Resolver,
    SearchConfig,
    check_derivation,
    get_default_strategies,
    resolve,
    resolve_backward,
    resolve_bidir,
)
from hl_prover.syntax import INT, ClassAtom, parse_class_atom, sort_var

STRUCTURE_GOALS = ["monoid(Z)", "semiring(Z)", "add_comm_group(Z)", "has_mul(Z)"]


class TestResolveFixture:
    """Test resolution over the structure hierarchy"""

    @pytest.mark.parametrize("strategy", ["backward", "bidir"])
    @pytest.mark.parametrize("goal", STRUCTURE_GOALS)
    def test_goals_resolve_and_check(self, structures_env, goal, strategy):
        """Test every fixture goal succeeds and its derivation checks"""
        atom = parse_class_atom(goal, structures_env)
        result = resolve(Query(atom, SearchConfig(strategy=strategy)), structures_env)

        assert result.success
        assert result.metrics.outcome == Outcome.SUCCESS
        assert check_derivation(result.derivation, atom, structures_env)

    def test_derivation_ends_in_fact(self, structures_env):
        """Test the leaves of a derivation are facts"""
        atom = parse_class_atom("monoid(Z)", structures_env)
        derivation = resolve_backward(Query(atom), structures_env).derivation

        assert "ring_int" in list(derivation.rules_used())

    def test_unprovable(self, structures_env):
        """Test a class with no path from ring(Z) fails under both strategies"""
        atom = parse_class_atom("field(Z)", structures_env)

        assert resolve_backward(Query(atom), structures_env).metrics.outcome == Outcome.FAILURE
        assert resolve_bidir(Query(atom, SearchConfig(strategy="bidir")), structures_env).metrics.outcome == Outcome.FAILURE

    def test_strategies_agree(self, structures_env):
        """Test backward and bidir agree on every class at int"""
        for cls in structures_env.classes:
            atom = ClassAtom(cls, (INT,))
            backward = resolve(Query(atom, SearchConfig(strategy="backward")), structures_env)
            bidir = resolve(Query(atom, SearchConfig(strategy="bidir")), structures_env)
            assert backward.success == bidir.success, cls


class TestPathologies:
    """Test cycles, depth limits and exponential search"""

    @pytest.fixture
    def loop_env(self):
        return load_env("class c (a)\ninstance loop : c(a) <- c(a)")

    @pytest.mark.parametrize("strategy", ["backward", "bidir"])
    def test_self_loop_terminates(self, loop_env, strategy):
        """Test C a <- C a ends with cycle_detected"""
        atom = parse_class_atom("c(Z)", loop_env)
        result = resolve(Query(atom, SearchConfig(strategy=strategy)), loop_env)

        assert not result.success
        assert result.metrics.outcome == Outcome.CYCLE_DETECTED

    def test_depth_exceeded(self):
        """Test a chain longer than max_depth is truncated"""
        generated = generate("chain", 5)
        env = generated.env()
        result = resolve(Query(generated.query_atom(env), SearchConfig(max_depth=3)), env)

        assert result.metrics.outcome == Outcome.DEPTH_EXCEEDED

    def test_chain_expansions(self):
        """Test a chain of 5 is solved with few expansions by both strategies"""
        generated = generate("chain", 5)
        env = generated.env()
        atom = generated.query_atom(env)
        for strategy in ("backward", "bidir"):
            result = resolve(Query(atom, SearchConfig(strategy=strategy)), env)
            assert result.success
            assert result.metrics.nodes_expanded <= 5 * len(env.instances)

    def test_backward_blowup_on_diamond_ladder(self):
        """Test failing backward search at least doubles per ladder rung"""
        previous = None
        for n in range(2, 11):
            generated = generate("diamond-ladder", n)
            env = generated.env()
            config = SearchConfig(max_depth=2 * n + 8, cache=False)
            nodes = resolve(Query(generated.query_atom(env), config), env).metrics.nodes_expanded
            if previous is not None:
                assert nodes >= 2 * previous
            previous = nodes

    def test_bidir_linear_on_diamond_ladder(self):
        """Test bidir expands each ladder atom once and stays within twice a linear fit"""
        sizes = range(2, 11)
        counts = []
        for n in sizes:
            generated = generate("diamond-ladder", n)
            env = generated.env()
            config = SearchConfig(strategy="bidir", cache=False)
            metrics = resolve(Query(generated.query_atom(env), config), env).metrics
            assert metrics.outcome == Outcome.FAILURE
            counts.append(metrics.nodes_expanded)

        assert counts == [2 * n + 1 for n in sizes]
        slope = (counts[-1] - counts[0]) / (sizes[-1] - sizes[0])
        for n, count in zip(sizes, counts):
            assert count <= 2 * (counts[0] + slope * (n - sizes[0]))

    @pytest.mark.parametrize("strategy", ["backward", "bidir"])
    def test_direct_fact_is_one_expansion(self, strategy):
        """Test a query answered by a fact expands a single node"""
        env = load_env("class c (a)\ninstance c_int : c(Z)")
        result = resolve(Query(parse_class_atom("c(Z)", env), SearchConfig(strategy=strategy)), env)

        assert result.success
        assert result.metrics.nodes_expanded == 1

    def test_cache_keeps_outcome(self):
        """Test memoization changes effort, not the answer"""
        generated = generate("diamond-ladder", 6)
        env = generated.env()
        atom = generated.query_atom(env)
        cached = resolve(Query(atom, SearchConfig(max_depth=30, cache=True)), env).metrics
        uncached = resolve(Query(atom, SearchConfig(max_depth=30, cache=False)), env).metrics

        assert cached.outcome == uncached.outcome == Outcome.FAILURE
        assert cached.nodes_expanded < uncached.nodes_expanded


class TestQueries:
    """Test query validation and the derivation checker"""

    def test_non_ground_query(self):
        """Test queries must be ground"""
        with pytest.raises(ResolutionError):
            Query(ClassAtom("monoid", (sort_var("a"),)))

    def test_unknown_strategy(self):
        """Test unknown strategies are rejected"""
        with pytest.raises(ResolutionError):
            SearchConfig(strategy="sideways")

    def test_registry(self):
        """Test both strategies are registered"""
        assert set(get_default_strategies()) == {"backward", "bidir"}

    def test_checker_rejects_wrong_head(self, structures_env):
        """Test a fact that does not prove the goal is rejected"""
        atom = parse_class_atom("monoid(Z)", structures_env)
        result = check_derivation(Derivation("ring_int"), atom, structures_env)

        assert not result
        assert "head mismatch" in result.reasons[0]

    def test_checker_rejects_unknown_rule(self, structures_env):
        """Test made-up rule names are rejected"""
        atom = parse_class_atom("monoid(Z)", structures_env)

        assert not check_derivation(Derivation("made_up"), atom, structures_env)

    def test_derivation_round_trip(self, structures_env):
        """Test derivations survive dict conversion"""
        atom = parse_class_atom("semiring(Z)", structures_env)
        derivation = resolve_backward(Query(atom), structures_env).derivation

        assert Derivation.from_dict(derivation.to_dict()) == derivation


class TestResolverModule:
    """Test the Resolver engine module"""

    @pytest.fixture
    def resolver(self):
        return Resolver({"strategy": "bidir"})

    def test_ready(self, resolver):
        """Test a valid configuration initializes"""
        assert resolver.status == ModuleStatus.READY

    def test_invalid_config(self):
        """Test an unknown strategy puts the module in error"""
        assert Resolver({"strategy": "sideways"}).status == ModuleStatus.ERROR

    def test_execute(self, resolver, structures_env):
        """Test execute resolves and checks the derivation"""
        result = resolver.execute({"atom": "monoid(Z)", "env": structures_env})

        assert result.success
        assert result.metadata["checked"] is True
        assert result.metadata["metrics"]["outcome"] == "success"

    def test_execute_bad_input(self, resolver):
        """Test malformed input is reported, not raised"""
        result = resolver.execute("monoid(Z)")

        assert not result.success
        assert result.error

    def test_discharge(self, resolver, structures_env):
        """Test side conditions use backward search"""
        assert resolver.discharge(parse_class_atom("semiring(Z)", structures_env), structures_env)
        assert not resolver.discharge(parse_class_atom("field(Z)", structures_env), structures_env)
