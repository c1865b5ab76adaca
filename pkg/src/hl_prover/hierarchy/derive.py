"""
Derived declarations.

``pi_instance`` lifts a unary class instance ``C(a)`` to the function space
``C(b -> a)`` and generates the pointwise definitional rules of every
operation the class bundles, directly or through the classes it implies.
``reassoc`` turns a lemma ``a ≫ b = d`` into its companion
``a ≫ (b ≫ x) = d ≫ x``.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from ..core.exceptions import HierarchyError, ReassocError
from ..syntax import (
    Binder,
    ClassAtom,
    ClassDecl,
    InstanceRule,
    Lemma,
    Numeral,
    Op,
    Rel,
    RewriteRule,
    RuleKind,
    Sort,
    SymbolTable,
    Var,
    arrow,
)
from ..syntax.symbols import RELATION_PROJECTIONS
from ..syntax.terms import free_vars
from .env import Env
from .graph import reachable_classes

logger = logging.getLogger(__name__)

SUFFIXES = {"+": "add", "*": "mul", "-": "sub", "neg": "neg", "0": "zero", "1": "one", "≫": "comp"}

# Built-ins that cannot be defined pointwise over a single carrier.
_SECOND_CARRIER = {"•", "^", "norm", "app"}

_FUNCTION_NAMES = ("f", "g", "h", "k")


@dataclass(frozen=True)
class PiInstance:
    instance: InstanceRule
    def_rules: Tuple[RewriteRule, ...]


def _fresh_name(env: Env, base: str) -> str:
    if env.declaration(base) is None:
        return base
    index = 1
    while env.declaration(f"{base}_{index}") is not None:
        index += 1
    return f"{base}_{index}"


def _class(env: Env, cls: Union[str, ClassDecl]) -> ClassDecl:
    name = cls if isinstance(cls, str) else cls.name
    decl = env.classes.get(name)
    if decl is None:
        raise HierarchyError(f"unknown class '{name}'")
    if decl.arity != 1:
        raise HierarchyError(f"class '{name}' is binary; only unary classes lift to function spaces")
    return decl


def _projections(env: Env, decl: ClassDecl) -> List[Tuple[str, str]]:
    """``(symbol, owning class)`` for the class and every class it implies"""
    found: List[Tuple[str, str]] = []
    seen = set()
    for name in [decl.name] + reachable_classes(env, decl.name):
        for symbol in env.classes[name].projections:
            if symbol not in seen:
                seen.add(symbol)
                found.append((symbol, name))
    return found


def _pointwise_arity(env: Env, symbol: str, owner: str) -> int:
    """Arity of a projection definable pointwise, or raise"""
    if symbol in ("0", "1"):
        return 0
    if symbol in _SECOND_CARRIER:
        raise HierarchyError(f"projection '{symbol}' of class '{owner}' mentions a second carrier")
    signature = env.symbols.ops[symbol]
    if signature.builtin:
        return signature.arity
    carrier = env.classes[owner].params[0]
    for sort in signature.params + (signature.result,):
        if sort.is_arrow or sort.name != carrier:
            raise HierarchyError(f"projection '{symbol}' of class '{owner}' mentions a second carrier")
    return signature.arity


def _def_rule(symbol: str, arity: int, base: Sort, domain: Sort, name: str, cls: str) -> RewriteRule:
    fn_sort = arrow(domain, base)
    point = Var("x", domain)
    functions = [Var(_FUNCTION_NAMES[i] if i < len(_FUNCTION_NAMES) else f"f{i}", fn_sort) for i in range(arity)]
    if symbol in ("0", "1"):
        lifted = Numeral.of_int(int(symbol), fn_sort)
        pointwise = Numeral.of_int(int(symbol), base)
    else:
        lifted = Op(symbol, tuple(functions), fn_sort)
        pointwise = Op(symbol, tuple(Op("app", (f, point), base) for f in functions), base)
    return RewriteRule(
        name=name,
        lhs=Op("app", (lifted, point), base),
        rhs=pointwise,
        kind=RuleKind.DEF,
        binders=tuple(Binder(f.name, fn_sort) for f in functions) + (Binder(point.name, domain),),
        doc=f"Pointwise {symbol} on functions into a {cls} carrier.",
    )


def _pointwise(env: Env, decl: ClassDecl, base: Sort, domain: Sort, prefix: str) -> List[RewriteRule]:
    rules: List[RewriteRule] = []
    for symbol, owner in _projections(env, decl):
        if symbol in RELATION_PROJECTIONS:
            logger.debug(f"skipping relation projection {symbol} of {owner}")
            continue
        arity = _pointwise_arity(env, symbol, owner)
        suffix = SUFFIXES.get(symbol, symbol)
        name = f"{prefix}_{suffix}"
        if env.declaration(name) is not None:
            name = _fresh_name(env, name)
        rules.append(_def_rule(symbol, arity, base, domain, name, decl.name))
    return rules


def pi_instance(
    env: Env,
    cls: Union[str, ClassDecl],
    base: ClassAtom,
    fn_sort: Sort,
    name: Optional[str] = None,
) -> PiInstance:
    """
    Lift ``base = C(a)`` to ``C(fn_sort -> a) <- C(a)``.

    Returns the instance together with the pointwise definitional rules of
    the bundled operations. Binary classes, and classes with an operation
    over a second carrier, are rejected with ``HierarchyError``.
    """
    decl = _class(env, cls)
    if base.cls != decl.name:
        raise HierarchyError(f"base atom {base} is not an instance of '{decl.name}'")
    (carrier,) = base.args
    name = name or _fresh_name(env, f"pi_{decl.name}")
    rules = _pointwise(env, decl, carrier, fn_sort, name)
    instance = InstanceRule(
        name=name,
        head=ClassAtom(decl.name, (arrow(fn_sort, carrier),)),
        body=(base,),
        doc=f"{decl.name} structure on functions into a {decl.name} carrier.",
    )
    return PiInstance(instance, tuple(rules))


def pointwise_rules(env: Env, rule: InstanceRule) -> List[RewriteRule]:
    """Definitional rules for a ``[pi_instance]`` rule of shape ``C(b -> a) <- C(a)``"""
    head = rule.head
    shape_ok = (
        len(head.args) == 1
        and head.args[0].is_arrow
        and len(rule.body) == 1
        and rule.body[0].cls == head.cls
        and rule.body[0].args == (head.args[0].codomain,)
    )
    if not shape_ok:
        raise HierarchyError(f"pi_instance '{rule.name}' must have the shape C(b -> a) <- C(a)")
    decl = _class(env, head.cls)
    fn_sort = head.args[0]
    return _pointwise(env, decl, fn_sort.codomain, fn_sort.domain, rule.name)


def register_pi_instance(env: Env, cls: Union[str, ClassDecl], base: ClassAtom, fn_sort: Sort) -> Env:
    """New environment extended by ``pi_instance`` and its definitional rules"""
    from .env import EnvBuilder

    derived = pi_instance(env, cls, base, fn_sort)
    builder = EnvBuilder.from_env(env)
    builder.add(derived.instance, expand=False)
    builder.add_all(derived.def_rules)
    return builder.seal()


def _fresh_variable(taken: set) -> str:
    if "x" not in taken:
        return "x"
    index = 0
    while f"x{index}" in taken:
        index += 1
    return f"x{index}"


def reassoc(lemma: Union[Lemma, RewriteRule], symbols: SymbolTable, assoc_op: str = "≫") -> RewriteRule:
    """Companion ``a ≫ (b ≫ x) = d ≫ x`` of ``a ≫ b = d``, as a simp rule"""
    if not symbols.is_assoc(assoc_op):
        raise ReassocError(f"operator '{assoc_op}' is not declared associative")
    statement = lemma.statement
    if not isinstance(statement, Rel) or statement.symbol != "=":
        raise ReassocError(f"'{lemma.name}' is not an equation")
    if isinstance(lemma, Lemma) and lemma.hypotheses:
        raise ReassocError(f"'{lemma.name}' has hypotheses")
    lhs, rhs = statement.lhs, statement.rhs
    if not (isinstance(lhs, Op) and lhs.symbol == assoc_op and len(lhs.args) == 2):
        raise ReassocError(f"left-hand side of '{lemma.name}' is not of the shape a {assoc_op} b")
    a, b = lhs.args
    sort = lhs.sort
    taken = {binder.name for binder in lemma.binders} | set(free_vars(statement))
    x = Var(_fresh_variable(taken), sort)
    companion_lhs = Op(assoc_op, (a, Op(assoc_op, (b, x), sort)), sort)
    companion_rhs = Op(assoc_op, (rhs, x), sort)
    binders = tuple(lemma.binders) + (Binder(x.name, sort),)
    logger.debug(f"reassoc companion {lemma.name}_assoc")
    return RewriteRule(
        name=f"{lemma.name}_assoc",
        lhs=companion_lhs,
        rhs=companion_rhs,
        kind=RuleKind.SIMP,
        conditions=lemma.conditions,
        binders=binders,
        doc=f"Reassociated form of {lemma.name}.",
    )
