import random

import pytest

from hl_prover.syntax import (
    INT,
    NAT,
    Coerce,
    Numeral,
    Op,
    Rel,
    Var,
    format_term,
    free_vars,
    match,
    parse_statement,
    parse_term,
    replace_at,
    subterm_at,
)
from hl_prover.syntax.formatter import format_prop
from hl_prover.syntax.terms import instantiate


class TestNumeral:
    """Test binary numerals"""

    def test_of_int_round_trip(self):
        """Test value recovers the integer"""
        assert Numeral.of_int(0, NAT).value == 0
        assert Numeral.of_int(13, NAT).bits == (1, 0, 1, 1)
        assert Numeral.of_int(2**200 + 7, NAT).value == 2**200 + 7

    def test_negative_rejected(self):
        """Test numerals are non-negative"""
        with pytest.raises(ValueError):
            Numeral.of_int(-1, INT)

    def test_non_canonical_bits_rejected(self):
        """Test trailing zero bits are rejected"""
        with pytest.raises(ValueError):
            Numeral((1, 0), NAT)


class TestPositions:
    """Test subterm access by position"""

    @pytest.fixture
    def term(self):
        return parse_term("(a + b) * c")

    def test_subterm_at(self, term):
        """Test child indices walk from the root"""
        assert subterm_at(term, (0, 1)) == Var("b", NAT)
        assert subterm_at(term, ()) == term

    def test_replace_at(self, term):
        """Test replacement rebuilds only the path"""
        replaced = replace_at(term, (1,), Numeral.of_int(2, NAT))

        assert replaced == parse_term("(a + b) * 2")

    def test_missing_position(self, term):
        """Test positions past the leaves raise IndexError"""
        with pytest.raises(IndexError):
            subterm_at(term, (0, 0, 0))

    def test_free_vars_order(self, term):
        """Test variables come in first-occurrence order"""
        assert free_vars(term) == ["a", "b", "c"]


class TestMatching:
    """Test first-order matching"""

    def test_match_binds_variables(self):
        """Test a pattern binds whole subterms"""
        pattern = parse_term("x + 0")
        subst = match(pattern, parse_term("(a * b) + 0"))

        assert subst is not None
        assert subst.terms["x"] == parse_term("a * b")
        assert instantiate(parse_term("x"), subst) == parse_term("a * b")

    def test_repeated_variable_needs_equal_subterms(self):
        """Test non-linear patterns"""
        pattern = parse_term("x + x")

        assert match(pattern, parse_term("a + a")) is not None
        assert match(pattern, parse_term("a + b")) is None

    def test_symbol_mismatch(self):
        """Test different heads do not match"""
        assert match(parse_term("x + y"), parse_term("a * b")) is None


class TestFormatter:
    """Test rendering back to source text"""

    def test_minimal_parentheses(self):
        """Test only needed parentheses are printed"""
        assert format_term(parse_term("(a + b) * c")) == "(a + b) * c"
        assert format_term(parse_term("a + b * c")) == "a + b * c"

    def test_relation(self):
        """Test relations print with unicode symbols"""
        assert format_term(parse_term("a <= b")) == "a ≤ b"
        assert format_term(parse_term("a <= b"), ascii=True) == "a <= b"

    def test_round_trip_with_sorts(self):
        """Test ascriptions make printed int terms parse back"""
        term = Op("+", (Var("x", INT), Numeral.of_int(1, INT)), INT)

        assert parse_term(format_term(term)) == term

    def test_bounded_forall(self):
        """Test quantifiers print with their bound"""
        prop, _ = parse_statement("forall n < 3, n < 4")

        assert format_prop(prop) == "∀ n < 3, n < 4"


def random_term(rng: random.Random, sort, depth: int):
    """Random int or nat term with casts, negation and literal powers"""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Var(rng.choice("xyz" if sort == INT else "mn"), sort)
        return Numeral.of_int(rng.randint(0, 12), sort)
    choices = ["+", "*", "^"] + (["-", "neg", "cast"] if sort == INT else [])
    symbol = rng.choice(choices)
    if symbol == "cast":
        return Coerce(NAT, INT, random_term(rng, NAT, depth - 1))
    if symbol == "neg":
        return Op("neg", (random_term(rng, sort, depth - 1),), sort)
    if symbol == "^":
        return Op("^", (random_term(rng, sort, depth - 1), Numeral.of_int(rng.randint(0, 3), NAT)), sort)
    return Op(symbol, (random_term(rng, sort, depth - 1), random_term(rng, sort, depth - 1)), sort)


class TestFormatRoundTrip:
    """Test printed random terms parse back to themselves"""

    @pytest.mark.parametrize("seed", range(500))
    def test_random_term(self, seed):
        """Test terms and relations over int and nat survive printing"""
        rng = random.Random(seed)
        sort = rng.choice((INT, NAT))
        term = random_term(rng, sort, 4)
        if rng.random() < 0.4:
            term = Rel(rng.choice(("=", "<", "≤", "≠")), term, random_term(rng, sort, 2))
        text = format_term(term)

        assert parse_term(text) == term, text
        assert parse_term(format_term(term, ascii=True)) == term
