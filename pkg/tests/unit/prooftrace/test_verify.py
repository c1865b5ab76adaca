import json
from dataclasses import replace

import pytest

from hl_prover.arith.numerals import NumTrace
from hl_prover.core.exceptions import TraceError
from hl_prover.hierarchy import load_env
from hl_prover.prooftrace import SCHEMA_VERSION, ProofTrace, Terminal, TraceStep
from hl_prover.prooftrace.verify import verify
from hl_prover.resolver import Derivation
from hl_prover.syntax import INT, NAT, RAT, Hypothesis, Numeral, Op, Substitution, parse_class_atom, parse_statement, parse_term
from hl_prover.tactics import get_default_tactics
from hl_prover.tactics.base import TacticContext

SOURCE = """
class monoid (a)
instance int_monoid : monoid(Z)

simp lemma add_zero (x : a) : x + 0 = x
simp lemma mul_one [monoid(a)] (x : a) : x * 1 = x
"""


@pytest.fixture
def env():
    return load_env(SOURCE)


def run(tactic, goal, env, hypotheses=()):
    result = get_default_tactics()[tactic]().apply(goal, TacticContext(env, hypotheses=tuple(hypotheses)))
    assert result.proved, result.message
    return result.trace


@pytest.fixture
def traces(env, structures_env):
    return {
        "simp": (run("simp", parse_term("(y + 0) * 1 = y", env, INT), env), env),
        "norm_num": (run("norm_num", parse_term("1 + 2 < 4"), env), env),
        "ring": (run("ring", parse_term("(a + b)^2 = a^2 + 2*a*b + b^2", env, INT), env), env),
        "abel": (run("abel", parse_term("a + b - a = b", env, INT), env), env),
        "linarith": (
            run(
                "linarith",
                parse_term("a ≤ c", env, RAT),
                env,
                [Hypothesis("h1", parse_term("a ≤ b", env, RAT)), Hypothesis("h2", parse_term("b ≤ c", env, RAT))],
            ),
            env,
        ),
        "dec_trivial": (run("dec_trivial", parse_statement("forall n < 4, n * n < 10")[0], env), env),
        "resolve": (run("resolve", parse_class_atom("monoid(Z)", structures_env), structures_env), structures_env),
    }


class TestVerifyAccepts:
    """Test traces produced by tactics are accepted"""

    @pytest.mark.parametrize("tactic", ["simp", "norm_num", "ring", "abel", "linarith", "dec_trivial", "resolve"])
    def test_accepts(self, traces, tactic):
        """Test each tactic's trace verifies"""
        trace, env = traces[tactic]

        assert verify(trace, env)
        assert str(verify(trace, env)) == "accepted"

    def test_hypothesis_terminal(self, env):
        """Test simp closes a goal that normalizes to a hypothesis"""
        hypothesis = Hypothesis("h", parse_term("x < y + 0", env, INT))
        trace = run("simp", parse_term("x + 0 < y", env, INT), env, [hypothesis])

        assert trace.terminal == Terminal.HYPOTHESIS
        assert verify(trace, env)

    @pytest.mark.parametrize("tactic", ["simp", "norm_num", "ring", "linarith", "dec_trivial", "resolve"])
    def test_json_round_trip(self, traces, tactic):
        """Test a trace read back from JSON still verifies"""
        trace, env = traces[tactic]
        loaded = ProofTrace.from_json(trace.to_json())

        assert loaded.goal == trace.goal
        assert loaded.justifications() == trace.justifications()
        assert verify(loaded, env)

    def test_schema_field(self, traces):
        """Test the JSON envelope carries its schema version"""
        trace, _ = traces["simp"]

        assert json.loads(trace.to_json())["schema"] == SCHEMA_VERSION


class TestVerifyRejects:
    """Test tampered traces are rejected at the first bad step"""

    def test_wrong_rule_name(self, traces):
        """Test a step naming a rule that does not produce it"""
        trace, env = traces["simp"]
        steps = list(trace.steps)
        steps[0] = replace(steps[0], justification="mul_one")
        verdict = verify(replace(trace, steps=steps), env)

        assert not verdict
        assert verdict.step == 0

    def test_unknown_rule(self, traces):
        """Test a step naming a rule the environment lacks"""
        trace, env = traces["simp"]
        steps = list(trace.steps)
        steps[1] = replace(steps[1], justification="made_up")

        assert verify(replace(trace, steps=steps), env).step == 1

    def test_changed_result(self, traces, env):
        """Test a step whose result is not the rewrite of the statement"""
        trace, _ = traces["simp"]
        steps = list(trace.steps)
        steps[-1] = replace(steps[-1], result=parse_term("z = y", env, INT))

        assert not verify(replace(trace, steps=steps), env)

    def test_dropped_step(self, traces):
        """Test removing the last step leaves a non-reflexive goal"""
        trace, env = traces["simp"]
        verdict = verify(replace(trace, steps=trace.steps[:-1]), env)

        assert not verdict
        assert verdict.step == len(trace.steps) - 1

    def test_ring_unknown_schema(self, traces):
        """Test ring steps must name a schema"""
        trace, env = traces["ring"]
        steps = list(trace.steps)
        steps[0] = replace(steps[0], justification="no_such_schema")

        assert verify(replace(trace, steps=steps), env).step == 0

    def test_missing_numeral_fact(self, traces):
        """Test literal truth needs the closing fact"""
        trace, env = traces["norm_num"]
        evidence = NumTrace(list(trace.evidence.steps[:-1]))

        assert not verify(replace(trace, evidence=evidence), env)

    def test_linarith_without_hypotheses(self, traces):
        """Test certificates are checked against the rebuilt systems"""
        trace, env = traces["linarith"]

        assert not verify(replace(trace, hypotheses=()), env)

    def test_wrong_derivation(self, traces):
        """Test a derivation for another goal is rejected"""
        trace, env = traces["resolve"]

        assert not verify(replace(trace, evidence=Derivation("ring_int")), env)

    def test_resolve_takes_no_steps(self, traces):
        """Test search traces cannot carry rewrite steps"""
        trace, env = traces["resolve"]
        step = TraceStep("made_up", (), Substitution(), trace.goal)
        verdict = verify(replace(trace, steps=[step]), env)

        assert verdict.step == 0
        assert "takes no rewrite steps" in verdict.reason

    def test_false_decision(self, env):
        """Test a decision trace for a false proposition is rejected"""
        statement, _ = parse_statement("forall n < 4, n * n < 10")
        trace = run("dec_trivial", statement, env)
        false_statement, _ = parse_statement("forall n < 4, n * n < 5")

        assert not verify(replace(trace, goal=false_statement), env)


class TestTraceJson:
    """Test the JSON envelope"""

    def test_malformed(self):
        """Test invalid JSON is a TraceError"""
        with pytest.raises(TraceError):
            ProofTrace.from_json("{not json")

    def test_unknown_schema(self, traces):
        """Test other schema versions are refused"""
        trace, _ = traces["simp"]
        data = json.loads(trace.to_json())
        data["schema"] = SCHEMA_VERSION + 1

        with pytest.raises(TraceError):
            ProofTrace.from_json(json.dumps(data))

    def test_default_sort_kept(self, env):
        """Test goal metadata survives the round trip"""
        trace = replace(run("norm_num", parse_term("2 * 3 = 6"), env), default_sort=NAT)

        assert ProofTrace.from_json(trace.to_json()).default_sort == NAT


def corrupted(term):
    """A different term of the same sort"""
    if isinstance(term, Numeral):
        return Numeral.of_int(term.value + 1, term.sort)
    return Op("+", (term, Numeral.of_int(1, term.sort)), term.sort)


class TestCorruptedSubstitution:
    """Test every substitution entry of a trace is checked"""

    @pytest.mark.parametrize("tactic", ["simp", "ring", "abel"])
    def test_each_entry(self, traces, tactic):
        """Test changing any one bound term rejects the trace at that step"""
        trace, env = traces[tactic]
        checked = 0
        for index, step in enumerate(trace.steps):
            for name, bound in step.substitution.terms.items():
                terms = dict(step.substitution.terms)
                terms[name] = corrupted(bound)
                steps = list(trace.steps)
                steps[index] = replace(step, substitution=Substitution(terms, dict(step.substitution.sorts)))
                verdict = verify(replace(trace, steps=steps), env)

                assert not verdict, (index, name)
                assert verdict.step == index
                checked += 1

        assert checked > 0
