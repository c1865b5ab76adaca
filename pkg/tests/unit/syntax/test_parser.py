import pytest

from hl_prover.core.exceptions import (
    ParseError,
    RedeclarationError,
    SortMismatchError,
    UnknownSymbolError,
)
from hl_prover.hierarchy import load_env
from hl_prover.syntax import (
    INT,
    NAT,
    BoundedForall,
    ClassAtom,
    ClassDecl,
    Goal,
    InstanceRule,
    Lemma,
    Numeral,
    Op,
    Rel,
    RelLit,
    RewriteRule,
    RuleKind,
    Var,
    parse_class_atom,
    parse_decls,
    parse_sort,
    parse_statement,
    parse_term,
)


class TestParseTerm:
    """Test term parsing and sort inference"""

    def test_numerals_default_to_nat(self):
        """Test unconstrained numerals and variables take nat"""
        term = parse_term("x + 0")

        assert term == Op("+", (Var("x", NAT), Numeral.of_int(0, NAT)), NAT)

    def test_default_sort_argument(self):
        """Test the sort argument replaces the nat default"""
        term = parse_term("x * 2", sort=INT)

        assert term.sort == INT
        assert term.args[1] == Numeral.of_int(2, INT)

    def test_greater_than_is_flipped(self):
        """Test > is stored as < with swapped sides"""
        term = parse_term("x > y")

        assert isinstance(term, Rel)
        assert term.symbol == "<"
        assert term.lhs == Var("y", NAT)
        assert term.rhs == Var("x", NAT)

    def test_ascii_and_unicode_relations_agree(self):
        """Test <= and ≤ parse to the same relation"""
        assert parse_term("a <= b") == parse_term("a ≤ b")
        assert parse_term("a != b") == parse_term("a ≠ b")

    def test_precedence(self):
        """Test multiplication binds tighter than addition"""
        term = parse_term("a + b * c")

        assert term.symbol == "+"
        assert term.args[1].symbol == "*"

    def test_mixed_sorts_rejected(self):
        """Test adding a nat to an int without a coercion fails"""
        with pytest.raises(SortMismatchError):
            parse_term("x + y", variables={"x": NAT, "y": INT})

    def test_unbound_variable_outside_pattern_mode(self):
        """Test closed parsing rejects unknown names"""
        with pytest.raises(UnknownSymbolError):
            parse_term("x + 1", pattern=False)

    def test_syntax_error_position(self):
        """Test syntax errors carry line and column"""
        with pytest.raises(ParseError) as exc:
            parse_term("x + * y")

        assert exc.value.line == 1
        assert exc.value.column is not None


class TestParseStatement:
    """Test goal statement parsing"""

    def test_relation(self):
        """Test a plain relation stays a Rel"""
        statement, variables = parse_statement("x + y = y + x")

        assert isinstance(statement, Rel)
        assert set(variables) == {"x", "y"}

    def test_bounded_forall(self):
        """Test bounded quantifiers become decidable propositions"""
        statement, _ = parse_statement("forall n < 5, n * n < 25")

        assert isinstance(statement, BoundedForall)
        assert statement.var == "n"
        assert statement.bound.value == 5
        assert isinstance(statement.body, RelLit)

    def test_class_atom(self):
        """Test class atoms parse against an environment"""
        env = load_env("class monoid (a)")
        assert parse_class_atom("monoid(Z)", env) == ClassAtom("monoid", (INT,))

    def test_unknown_class(self):
        """Test unknown classes are reported"""
        with pytest.raises(UnknownSymbolError):
            parse_class_atom("monoid(int)")

    def test_sort_aliases(self):
        """Test ℤ and Z name the int sort"""
        assert parse_sort("ℤ") == INT
        assert parse_sort("Z") == INT


class TestParseDecls:
    """Test declaration files"""

    SOURCE = """
/-- Monoids. -/
class monoid (a)
/-- Commutative monoids. -/
class comm_monoid (a)

instance comm_monoid_to_monoid : monoid(a) <- comm_monoid(a)
instance int_comm_monoid : comm_monoid(Z)

/-- Right identity. -/
simp lemma add_zero (x : int) : x + 0 = x

/-- Transitivity. -/
lemma lt_trans (x y z : int) (h1 : x < y) (h2 : y < z) : x < z

goal int_monoid : monoid(Z)
goal small (x y : rat) (h : x < y) : x < y + 1 by linarith
"""

    @pytest.fixture
    def decls(self):
        return parse_decls(self.SOURCE)

    def test_declaration_kinds(self, decls):
        """Test every declaration form is recognized in order"""
        kinds = [type(d) for d in decls]

        assert kinds == [ClassDecl, ClassDecl, InstanceRule, InstanceRule, RewriteRule, Lemma, Goal, Goal]

    def test_docs_and_positions(self, decls):
        """Test doc strings and source positions are kept"""
        monoid = decls[0]

        assert monoid.doc == "Monoids."
        assert monoid.position is not None
        assert monoid.position.line >= 2

    def test_instance_rule(self, decls):
        """Test instance head and body"""
        rule = decls[2]

        assert rule.head.cls == "monoid"
        assert [a.cls for a in rule.body] == ["comm_monoid"]
        assert decls[3].is_fact

    def test_rewrite_rule(self, decls):
        """Test simp lemmas become simp rewrite rules"""
        rule = decls[4]

        assert rule.kind == RuleKind.SIMP
        assert rule.rhs == Var("x", INT)

    def test_lemma_hypotheses(self, decls):
        """Test named hypotheses are elaborated with the binder sorts"""
        lemma = decls[5]

        assert [h.name for h in lemma.hypotheses] == ["h1", "h2"]
        assert lemma.hypotheses[0].statement.lhs.sort == INT

    def test_goals(self, decls):
        """Test class goals default to resolve, others keep their tactic"""
        class_goal, arith_goal = decls[6], decls[7]

        assert class_goal.tactic == "resolve"
        assert class_goal.is_class_goal
        assert arith_goal.tactic == "linarith"
        assert [h.name for h in arith_goal.hypotheses] == ["h"]

    def test_redeclaration(self):
        """Test a repeated name is rejected"""
        with pytest.raises(RedeclarationError):
            parse_decls("class monoid (a)\nclass monoid (a)")

    def test_rule_must_be_equation(self):
        """Test rewrite rules must state an equation"""
        with pytest.raises(ParseError):
            parse_decls("simp lemma bad (x : int) : x < x + 1")

    def test_comments_are_ignored(self):
        """Test # comments"""
        assert parse_decls("# nothing here\n") == []
