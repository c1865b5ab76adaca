"""
Binary-numeral arithmetic kernel.

Facts are ground statements about integers (``add a b c`` reads a + b = c).
Every fact in a ``NumTrace`` is introduced by one lemma applied to earlier
facts; the lemmas only look at parities, halvings and signs of their
arguments, so checking a trace never evaluates a sum or product directly.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

RELATIONS = ("add", "succ", "mul", "sub", "tsub", "neg", "pow", "lt", "le", "eq", "ne")


@dataclass(frozen=True)
class NumFact:
    rel: str
    args: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.rel}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class NumStep:
    lemma: str
    fact: NumFact
    premises: Tuple[int, ...] = ()


def _half(n: int) -> int:
    return n >> 1


def _bit0(n: int, half: int) -> bool:
    return n >= 0 and n & 1 == 0 and n >> 1 == half


def _bit1(n: int, half: int) -> bool:
    return n >= 0 and n & 1 == 1 and n >> 1 == half


def _nonneg(*values: int) -> bool:
    return all(v >= 0 for v in values)


_Check = Callable[[Tuple[int, ...], List[NumFact]], bool]


def _premises(rels: Sequence[str]) -> Callable[[_Check], _Check]:
    def wrap(check: _Check) -> _Check:
        def guarded(args: Tuple[int, ...], premises: List[NumFact]) -> bool:
            if len(premises) != len(rels) or any(p.rel != r for p, r in zip(premises, rels)):
                return False
            return check(args, premises)

        return guarded

    return wrap


@_premises(())
def _zero_add(a, p):
    return a[0] == 0 and a[1] == a[2] and _nonneg(a[1])


@_premises(())
def _add_zero(a, p):
    return a[1] == 0 and a[0] == a[2] and _nonneg(a[0])


@_premises(("add",))
def _add_bit0_bit0(a, p):
    x, y, z = p[0].args
    return _bit0(a[0], x) and _bit0(a[1], y) and _bit0(a[2], z)


@_premises(("add",))
def _add_bit0_bit1(a, p):
    x, y, z = p[0].args
    return _bit0(a[0], x) and _bit1(a[1], y) and _bit1(a[2], z)


@_premises(("add",))
def _add_bit1_bit0(a, p):
    x, y, z = p[0].args
    return _bit1(a[0], x) and _bit0(a[1], y) and _bit1(a[2], z)


@_premises(("add", "succ"))
def _add_bit1_bit1(a, p):
    x, y, z = p[0].args
    s, t = p[1].args
    return _bit1(a[0], x) and _bit1(a[1], y) and s == z and _bit0(a[2], t)


@_premises(())
def _succ_zero(a, p):
    return a == (0, 1)


@_premises(())
def _succ_bit0(a, p):
    return a[0] > 0 and _bit0(a[0], _half(a[0])) and _bit1(a[1], _half(a[0]))


@_premises(("succ",))
def _succ_bit1(a, p):
    x, y = p[0].args
    return _bit1(a[0], x) and _bit0(a[1], y)


@_premises(())
def _zero_mul(a, p):
    return a[0] == 0 and a[2] == 0 and _nonneg(a[1])


@_premises(("mul",))
def _mul_bit0(a, p):
    x, y, z = p[0].args
    return _bit0(a[0], x) and y == a[1] and _bit0(a[2], z)


@_premises(("mul", "add"))
def _mul_bit1(a, p):
    x, y, z = p[0].args
    d, e, f = p[1].args
    return _bit1(a[0], x) and y == a[1] and _bit0(d, z) and e == a[1] and f == a[2]


@_premises(())
def _pow_zero(a, p):
    return a[1] == 0 and a[2] == 1


@_premises(("pow", "mul"))
def _pow_bit0(a, p):
    base, n, c = p[0].args
    x, y, z = p[1].args
    return base == a[0] and _bit0(a[1], n) and n > 0 and x == c and y == c and z == a[2]


@_premises(("pow", "mul", "mul"))
def _pow_bit1(a, p):
    base, n, c = p[0].args
    x, y, d = p[1].args
    u, v, w = p[2].args
    return base == a[0] and _bit1(a[1], n) and x == c and y == c and u == d and v == a[0] and w == a[2]


@_premises(("add", "add"))
def _lt_of_add(a, p):
    x, k, y = p[0].args
    one, rest, k2 = p[1].args
    return x == a[0] and y == a[1] and one == 1 and k2 == k and _nonneg(rest)


@_premises(("add",))
def _le_of_add(a, p):
    x, k, y = p[0].args
    return x == a[0] and y == a[1] and _nonneg(k)


@_premises(())
def _eq_refl(a, p):
    return a[0] == a[1]


@_premises(("lt",))
def _ne_of_lt(a, p):
    return p[0].args == (a[0], a[1])


@_premises(("lt",))
def _ne_of_gt(a, p):
    return p[0].args == (a[1], a[0])


@_premises(("add",))
def _sub_of_add(a, p):
    x, y, z = p[0].args
    return x == a[1] and y == a[2] and z == a[0]


@_premises(("le",))
def _tsub_of_le(a, p):
    return p[0].args == (a[0], a[1]) and a[2] == 0


@_premises(("add",))
def _sub_eq_add_neg(a, p):
    x, y, z = p[0].args
    return x == a[0] and y == -a[1] and z == a[2]


@_premises(())
def _neg_lit(a, p):
    return a[1] == -a[0]


@_premises(("add",))
def _add_neg_neg(a, p):
    x, y, z = p[0].args
    return _nonneg(x, y) and a == (-x, -y, -z)


@_premises(("add",))
def _add_pos_neg(a, p):
    m, c, x = p[0].args
    return _nonneg(m, c) and a == (x, -m, c)


@_premises(("add",))
def _add_pos_neg_lt(a, p):
    x, c, m = p[0].args
    return _nonneg(x, c) and a == (x, -m, -c)


@_premises(("add",))
def _add_neg_pos(a, p):
    m, c, y = p[0].args
    return _nonneg(m, c) and a == (-m, y, c)


@_premises(("add",))
def _add_neg_pos_lt(a, p):
    y, c, m = p[0].args
    return _nonneg(y, c) and a == (-m, y, -c)


@_premises(("mul",))
def _mul_neg_left(a, p):
    x, y, z = p[0].args
    return _nonneg(x, y) and a == (-x, y, -z)


@_premises(("mul",))
def _mul_neg_right(a, p):
    x, y, z = p[0].args
    return _nonneg(x, y) and a == (x, -y, -z)


@_premises(("mul",))
def _mul_neg_neg(a, p):
    x, y, z = p[0].args
    return _nonneg(x, y) and a == (-x, -y, z)


@_premises(("pow",))
def _pow_neg_even(a, p):
    x, n, z = p[0].args
    return x >= 0 and n & 1 == 0 and a == (-x, n, z)


@_premises(("pow",))
def _pow_neg_odd(a, p):
    x, n, z = p[0].args
    return x >= 0 and n & 1 == 1 and a == (-x, n, -z)


@_premises(())
def _lt_neg_pos(a, p):
    return a[0] < 0 <= a[1]


@_premises(("lt",))
def _lt_neg_neg(a, p):
    return a[0] < 0 and a[1] < 0 and p[0].args == (-a[1], -a[0])


@_premises(())
def _le_neg_pos(a, p):
    return a[0] < 0 <= a[1]


@_premises(("le",))
def _le_neg_neg(a, p):
    return a[0] < 0 and a[1] < 0 and p[0].args == (-a[1], -a[0])


# lemma name -> (relation it proves, arity, checker)
LEMMAS: Dict[str, Tuple[str, int, _Check]] = {
    "zero_add": ("add", 3, _zero_add),
    "add_zero": ("add", 3, _add_zero),
    "add_bit0_bit0": ("add", 3, _add_bit0_bit0),
    "add_bit0_bit1": ("add", 3, _add_bit0_bit1),
    "add_bit1_bit0": ("add", 3, _add_bit1_bit0),
    "add_bit1_bit1": ("add", 3, _add_bit1_bit1),
    "succ_zero": ("succ", 2, _succ_zero),
    "succ_bit0": ("succ", 2, _succ_bit0),
    "succ_bit1": ("succ", 2, _succ_bit1),
    "zero_mul": ("mul", 3, _zero_mul),
    "mul_bit0": ("mul", 3, _mul_bit0),
    "mul_bit1": ("mul", 3, _mul_bit1),
    "pow_zero": ("pow", 3, _pow_zero),
    "pow_bit0": ("pow", 3, _pow_bit0),
    "pow_bit1": ("pow", 3, _pow_bit1),
    "lt_of_add": ("lt", 2, _lt_of_add),
    "le_of_add": ("le", 2, _le_of_add),
    "eq_refl": ("eq", 2, _eq_refl),
    "ne_of_lt": ("ne", 2, _ne_of_lt),
    "ne_of_gt": ("ne", 2, _ne_of_gt),
    "sub_of_add": ("sub", 3, _sub_of_add),
    "tsub_of_add": ("tsub", 3, _sub_of_add),
    "tsub_of_le": ("tsub", 3, _tsub_of_le),
    "sub_eq_add_neg": ("sub", 3, _sub_eq_add_neg),
    "neg_lit": ("neg", 2, _neg_lit),
    "add_neg_neg": ("add", 3, _add_neg_neg),
    "add_pos_neg": ("add", 3, _add_pos_neg),
    "add_pos_neg_lt": ("add", 3, _add_pos_neg_lt),
    "add_neg_pos": ("add", 3, _add_neg_pos),
    "add_neg_pos_lt": ("add", 3, _add_neg_pos_lt),
    "mul_neg_left": ("mul", 3, _mul_neg_left),
    "mul_neg_right": ("mul", 3, _mul_neg_right),
    "mul_neg_neg": ("mul", 3, _mul_neg_neg),
    "pow_neg_even": ("pow", 3, _pow_neg_even),
    "pow_neg_odd": ("pow", 3, _pow_neg_odd),
    "lt_neg_pos": ("lt", 2, _lt_neg_pos),
    "lt_neg_neg": ("lt", 2, _lt_neg_neg),
    "le_neg_pos": ("le", 2, _le_neg_pos),
    "le_neg_neg": ("le", 2, _le_neg_neg),
}


@dataclass
class NumTrace:
    """Numbered facts, each justified by a kernel lemma over earlier facts"""
    steps: List[NumStep] = field(default_factory=list)

    def fact(self, index: int) -> NumFact:
        return self.steps[index].fact

    @property
    def claim(self) -> Optional[NumFact]:
        return self.steps[-1].fact if self.steps else None

    def check(self) -> Optional[Tuple[int, str]]:
        """None when every step is valid, else ``(index, reason)`` of the first bad one"""
        for index, step in enumerate(self.steps):
            entry = LEMMAS.get(step.lemma)
            if entry is None:
                return index, f"unknown numeral lemma '{step.lemma}'"
            rel, arity, checker = entry
            if step.fact.rel != rel or len(step.fact.args) != arity:
                return index, f"'{step.lemma}' proves {rel} facts, not {step.fact}"
            if any(p < 0 or p >= index for p in step.premises):
                return index, f"'{step.lemma}' cites a premise that is not an earlier step"
            if not checker(step.fact.args, [self.steps[p].fact for p in step.premises]):
                return index, f"'{step.lemma}' does not justify {step.fact}"
        return None

    def holds(self, fact: NumFact) -> bool:
        return any(step.fact == fact for step in self.steps)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "steps": [
                {"lemma": s.lemma, "rel": s.fact.rel, "args": [str(a) for a in s.fact.args], "premises": list(s.premises)}
                for s in self.steps
            ]
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NumTrace":
        return cls(
            [
                NumStep(s["lemma"], NumFact(s["rel"], tuple(int(a) for a in s["args"])), tuple(s.get("premises", ())))
                for s in data.get("steps", [])
            ]
        )


class NumProver:
    """
    Builds a ``NumTrace`` while computing. Each ``prove_*`` method returns the
    result value and the index of the fact that states it; facts are shared
    between calls.
    """

    def __init__(self, trace: Optional[NumTrace] = None):
        self.trace = trace or NumTrace()
        self._known: Dict[NumFact, int] = {step.fact: i for i, step in enumerate(self.trace.steps)}

    def _emit(self, lemma: str, rel: str, args: Tuple[int, ...], premises: Tuple[int, ...] = ()) -> int:
        fact = NumFact(rel, args)
        known = self._known.get(fact)
        if known is not None:
            return known
        self.trace.steps.append(NumStep(lemma, fact, premises))
        index = len(self.trace.steps) - 1
        self._known[fact] = index
        return index

    # -- naturals ---------------------------------------------------------

    def _succ(self, a: int) -> int:
        chain = [a]
        while chain[-1] & 1:
            chain.append(chain[-1] >> 1)
        x = chain.pop()
        if x == 0:
            index = self._emit("succ_zero", "succ", (0, 1))
        else:
            index = self._emit("succ_bit0", "succ", (x, x + 1))
        value = x + 1
        for x in reversed(chain):
            value = value << 1
            index = self._emit("succ_bit1", "succ", (x, value), (index,))
        return index

    def _add_nat(self, a: int, b: int) -> Tuple[int, int]:
        chain: List[Tuple[int, int]] = []
        x, y = a, b
        while x and y:
            chain.append((x, y))
            x, y = x >> 1, y >> 1
        if x == 0:
            value, index = y, self._emit("zero_add", "add", (0, y, y))
        else:
            value, index = x, self._emit("add_zero", "add", (x, 0, x))
        for x, y in reversed(chain):
            if x & 1 and y & 1:
                succ = self._succ(value)
                value = (value + 1) << 1
                index = self._emit("add_bit1_bit1", "add", (x, y, value), (index, succ))
            elif x & 1:
                value = (value << 1) | 1
                index = self._emit("add_bit1_bit0", "add", (x, y, value), (index,))
            elif y & 1:
                value = (value << 1) | 1
                index = self._emit("add_bit0_bit1", "add", (x, y, value), (index,))
            else:
                value = value << 1
                index = self._emit("add_bit0_bit0", "add", (x, y, value), (index,))
        return value, index

    def _mul_nat(self, a: int, b: int) -> Tuple[int, int]:
        chain: List[int] = []
        x = a
        while x:
            chain.append(x)
            x >>= 1
        value, index = 0, self._emit("zero_mul", "mul", (0, b, 0))
        for x in reversed(chain):
            if x & 1:
                value, added = self._add_nat(value << 1, b)
                index = self._emit("mul_bit1", "mul", (x, b, value), (index, added))
            else:
                value = value << 1
                index = self._emit("mul_bit0", "mul", (x, b, value), (index,))
        return value, index

    def _pow_nat(self, a: int, n: int) -> Tuple[int, int]:
        chain: List[int] = []
        x = n
        while x:
            chain.append(x)
            x >>= 1
        value, index = 1, self._emit("pow_zero", "pow", (a, 0, 1))
        for x in reversed(chain):
            square, sq_index = self.prove_mul(value, value)
            if x & 1:
                value, mul_index = self.prove_mul(square, a)
                index = self._emit("pow_bit1", "pow", (a, x, value), (index, sq_index, mul_index))
            else:
                value = square
                index = self._emit("pow_bit0", "pow", (a, x, value), (index, sq_index))
        return value, index

    # -- signed ---------------------------------------------------------------

    def prove_add(self, a: int, b: int) -> Tuple[int, int]:
        if a >= 0 and b >= 0:
            return self._add_nat(a, b)
        if a < 0 and b < 0:
            value, index = self._add_nat(-a, -b)
            return -value, self._emit("add_neg_neg", "add", (a, b, -value), (index,))
        if a >= 0:
            m = -b
            if a >= m:
                _, index = self._add_nat(m, a - m)
                return a - m, self._emit("add_pos_neg", "add", (a, b, a - m), (index,))
            _, index = self._add_nat(a, m - a)
            return a - m, self._emit("add_pos_neg_lt", "add", (a, b, a - m), (index,))
        m = -a
        if b >= m:
            _, index = self._add_nat(m, b - m)
            return b - m, self._emit("add_neg_pos", "add", (a, b, b - m), (index,))
        _, index = self._add_nat(b, m - b)
        return b - m, self._emit("add_neg_pos_lt", "add", (a, b, b - m), (index,))

    def prove_mul(self, a: int, b: int) -> Tuple[int, int]:
        if a >= 0 and b >= 0:
            return self._mul_nat(a, b)
        value, index = self._mul_nat(abs(a), abs(b))
        if a < 0 and b < 0:
            return value, self._emit("mul_neg_neg", "mul", (a, b, value), (index,))
        if a < 0:
            return -value, self._emit("mul_neg_left", "mul", (a, b, -value), (index,))
        return -value, self._emit("mul_neg_right", "mul", (a, b, -value), (index,))

    def prove_pow(self, a: int, n: int) -> Tuple[int, int]:
        if n < 0:
            raise ValueError("negative exponent")
        if a >= 0:
            return self._pow_nat(a, n)
        value, index = self._pow_nat(-a, n)
        if n & 1:
            return -value, self._emit("pow_neg_odd", "pow", (a, n, -value), (index,))
        return value, self._emit("pow_neg_even", "pow", (a, n, value), (index,))

    def prove_neg(self, a: int) -> Tuple[int, int]:
        return -a, self._emit("neg_lit", "neg", (a, -a))

    def prove_sub(self, a: int, b: int) -> Tuple[int, int]:
        _, index = self.prove_add(a, -b)
        return a - b, self._emit("sub_eq_add_neg", "sub", (a, b, a - b), (index,))

    def prove_tsub(self, a: int, b: int) -> Tuple[int, int]:
        """Truncated subtraction on naturals"""
        if a >= b:
            _, index = self._add_nat(b, a - b)
            return a - b, self._emit("tsub_of_add", "tsub", (a, b, a - b), (index,))
        index = self.prove_le(a, b)
        return 0, self._emit("tsub_of_le", "tsub", (a, b, 0), (index,))

    # -- comparisons -------------------------------------------------------

    def prove_lt(self, a: int, b: int) -> int:
        if a >= b:
            raise ValueError(f"{a} < {b} is false")
        if a >= 0:
            k = b - a
            _, index = self._add_nat(a, k)
            _, positive = self._add_nat(1, k - 1)
            return self._emit("lt_of_add", "lt", (a, b), (index, positive))
        if b >= 0:
            return self._emit("lt_neg_pos", "lt", (a, b))
        index = self.prove_lt(-b, -a)
        return self._emit("lt_neg_neg", "lt", (a, b), (index,))

    def prove_le(self, a: int, b: int) -> int:
        if a > b:
            raise ValueError(f"{a} ≤ {b} is false")
        if a >= 0:
            _, index = self._add_nat(a, b - a)
            return self._emit("le_of_add", "le", (a, b), (index,))
        if b >= 0:
            return self._emit("le_neg_pos", "le", (a, b))
        index = self.prove_le(-b, -a)
        return self._emit("le_neg_neg", "le", (a, b), (index,))

    def prove_eq(self, a: int, b: int) -> int:
        if a != b:
            raise ValueError(f"{a} = {b} is false")
        return self._emit("eq_refl", "eq", (a, b))

    def prove_ne(self, a: int, b: int) -> int:
        if a < b:
            return self._emit("ne_of_lt", "ne", (a, b), (self.prove_lt(a, b),))
        if a > b:
            return self._emit("ne_of_gt", "ne", (a, b), (self.prove_lt(b, a),))
        raise ValueError(f"{a} ≠ {b} is false")
