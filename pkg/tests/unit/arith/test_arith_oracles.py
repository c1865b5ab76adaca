import operator
import random

import pytest

from hl_prover.arith import FalseProp, NotEqual, norm_num_prove, ring_prove_eq
from hl_prover.hierarchy import empty_env
from hl_prover.prooftrace import ProofTrace
from hl_prover.prooftrace.verify import verify
from hl_prover.syntax import INT, parse_term

ATOMS = ("a", "b", "c", "1", "2", "3")
VARIABLES = ("a", "b", "c")
RELATIONS = {"=": operator.eq, "≠": operator.ne, "<": operator.lt, "≤": operator.le}


def random_term(rng: random.Random, depth: int, ops: str = "+*") -> tuple:
    if depth == 0 or rng.random() < 0.3:
        return (rng.choice(ATOMS),)
    op = rng.choice(ops)
    if op == "n":
        return ("neg", random_term(rng, depth - 1, ops))
    if op == "^":
        return ("^", random_term(rng, depth - 1, ops), rng.randint(0, 3))
    return (op, random_term(rng, depth - 1, ops), random_term(rng, depth - 1, ops))


def show(tree: tuple, rng: random.Random = None) -> str:
    """Render a term tree, swapping commutative operands at random when ``rng`` is given"""
    if len(tree) == 1:
        return tree[0]
    if tree[0] == "neg":
        return f"(-{show(tree[1], rng)})"
    if tree[0] == "^":
        return f"({show(tree[1], rng)}) ^ {tree[2]}"
    op, left, right = tree
    if rng is not None and op in "+*" and rng.random() < 0.5:
        left, right = right, left
    return f"({show(left, rng)} {op} {show(right, rng)})"


def _clean(poly: dict) -> dict:
    return {m: c for m, c in poly.items() if c}


def _add(p: dict, q: dict) -> dict:
    total = dict(p)
    for monomial, c in q.items():
        total[monomial] = total.get(monomial, 0) + c
    return _clean(total)


def _mul(p: dict, q: dict) -> dict:
    product: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            monomial = tuple(x + y for x, y in zip(m1, m2))
            product[monomial] = product.get(monomial, 0) + c1 * c2
    return _clean(product)


def polynomial(tree: tuple) -> dict:
    """Sparse polynomial over a, b, c: exponent tuple to integer coefficient"""
    zero = (0,) * len(VARIABLES)
    if len(tree) == 1:
        name = tree[0]
        if name in VARIABLES:
            return {tuple(int(v == name) for v in VARIABLES): 1}
        return {zero: int(name)}
    op = tree[0]
    if op == "neg":
        return {m: -c for m, c in polynomial(tree[1]).items()}
    if op == "^":
        result = {zero: 1}
        for _ in range(tree[2]):
            result = _mul(result, polynomial(tree[1]))
        return result
    left, right = polynomial(tree[1]), polynomial(tree[2])
    if op == "+":
        return _add(left, right)
    if op == "-":
        return _add(left, {m: -c for m, c in right.items()})
    return _mul(left, right)


def signed_literal(value: int) -> str:
    return f"(-{-value})" if value < 0 else str(value)


class TestNormNumOracle:
    """Test literal arithmetic against Python integers"""

    @pytest.mark.parametrize("seed", range(30))
    def test_large_literals(self, seed):
        """Test sums, products and comparisons of up to 128-bit literals"""
        rng = random.Random(seed)
        a, b = rng.getrandbits(128), rng.getrandbits(128)

        assert isinstance(norm_num_prove(parse_term(f"{a} + {b} = {a + b}")), ProofTrace)
        assert isinstance(norm_num_prove(parse_term(f"{a} * {b} = {a * b}")), ProofTrace)
        comparison = norm_num_prove(parse_term(f"{a} < {b}"))
        assert isinstance(comparison, ProofTrace) == (a < b)
        assert isinstance(norm_num_prove(parse_term(f"{a} + {b} = {a + b + 1}")), FalseProp)

    @pytest.mark.parametrize("seed", range(200))
    def test_signed_256_bit_comparisons(self, seed):
        """Test random int comparisons of up to 256-bit operands agree with Python"""
        rng = random.Random(seed)
        for _ in range(5):
            a = rng.getrandbits(256) * rng.choice((1, -1))
            b = rng.getrandbits(rng.randint(1, 256)) * rng.choice((1, -1))
            symbol, apply = rng.choice([("+", operator.add), ("-", operator.sub), ("*", operator.mul)])
            value = apply(a, b)
            other = value + rng.choice((0, 0, 1, -1, rng.getrandbits(64)))
            relation, holds = rng.choice(list(RELATIONS.items()))
            source = f"{signed_literal(a)} {symbol} {signed_literal(b)} {relation} {signed_literal(other)}"
            result = norm_num_prove(parse_term(source, sort=INT))

            if holds(value, other):
                assert isinstance(result, ProofTrace), source
                assert verify(result, empty_env())
            else:
                assert isinstance(result, FalseProp), source


class TestRingOracle:
    """Test ring normalization against a sparse-polynomial oracle"""

    @pytest.mark.parametrize("seed", range(30))
    def test_commuted_terms_equal(self, seed):
        """Test a term equals any operand-swapped copy, with a verified trace"""
        rng = random.Random(seed)
        tree = random_term(rng, 3)
        equation = parse_term(f"{show(tree)} = {show(tree, rng)}", sort=INT)
        trace = ring_prove_eq(equation)

        assert isinstance(trace, ProofTrace)
        assert verify(trace, empty_env())

    @pytest.mark.parametrize("seed", range(30))
    def test_shifted_terms_differ(self, seed):
        """Test adding one changes the normal form"""
        rng = random.Random(seed)
        tree = random_term(rng, 3)
        equation = parse_term(f"{show(tree)} = {show(tree, rng)} + 1", sort=INT)

        assert isinstance(ring_prove_eq(equation), NotEqual)

    @pytest.mark.parametrize("seed", range(600))
    def test_agrees_with_polynomials(self, seed):
        """Test equal normal forms exactly when the polynomials are equal"""
        rng = random.Random(seed)
        left = random_term(rng, 3, "+*-n^")
        if rng.random() < 0.5:
            noise = random_term(rng, 2, "+*-n^")
            right = ("-", ("+", left, noise), noise)
            right_source = f"({show(left, rng)} + {show(noise)}) - {show(noise, rng)}"
        else:
            right = random_term(rng, 3, "+*-n^")
            right_source = show(right)
        equation = parse_term(f"{show(left)} = {right_source}", sort=INT)
        result = ring_prove_eq(equation)

        if polynomial(left) == polynomial(right):
            assert isinstance(result, ProofTrace)
            assert verify(result, empty_env())
        else:
            assert isinstance(result, NotEqual)
