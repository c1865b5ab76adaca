"""
Coercion normalization.

Three passes over a relation: numerals of a cast target sort are lifted to
casts of the source numeral, the ``cast_move`` and ``cast_elim`` rules run
under the simp engine, and casts left around numerals are folded back.
"""

import logging
from typing import List, Optional, Set, Tuple

from ..core.exceptions import RewriteError
from ..hierarchy import Env
from ..prooftrace import RewriteStep, RewriteTrace
from ..syntax import Coerce, Numeral, Rel, RewriteRule, RuleKind, Sort, Substitution, Term, instantiate
from ..syntax.symbols import SymbolTable
from ..syntax.terms import iter_postorder, iter_subterms, replace_at, subterm_at
from .simp import DEFAULT_FUEL, simp

logger = logging.getLogger(__name__)

CAST_NUMERAL = "cast_numeral"
NUMERAL_CAST = "numeral_cast"
CAST_NUMERAL_RULES = (CAST_NUMERAL, NUMERAL_CAST)


def cast_numeral_ok(before: Term, after: Term, symbols: SymbolTable) -> bool:
    """``n : T`` became ``↑(n : S)`` for a declared coercion S -> T"""
    return (
        isinstance(before, Numeral)
        and isinstance(after, Coerce)
        and isinstance(after.arg, Numeral)
        and after.arg.bits == before.bits
        and after.target == before.sort
        and after.arg.sort == after.source
        and symbols.coercion(after.source, after.target) is not None
    )


def numeral_cast_ok(before: Term, after: Term, symbols: SymbolTable) -> bool:
    return cast_numeral_ok(after, before, symbols)


def elim_guard(symbols: SymbolTable):
    """Elimination rules only fire through injective coercions"""

    def guard(rule: RewriteRule, subst: Substitution, term: Term) -> bool:
        if rule.kind != RuleKind.CAST_ELIM:
            return True
        return casts_injective(rule, subst, symbols)

    return guard


def casts_injective(rule: RewriteRule, subst: Substitution, symbols: SymbolTable) -> bool:
    for _, sub in iter_subterms(rule.lhs):
        if isinstance(sub, Coerce):
            cast = instantiate(sub, subst)
            coercion = symbols.coercion(cast.source, cast.target)
            if coercion is None or not coercion.injective:
                return False
    return True


def _cast_sources(term: Term) -> dict:
    sources: dict = {}
    for _, sub in iter_subterms(term):
        if isinstance(sub, Coerce):
            sources.setdefault(sub.target, set()).add(sub.source)
    return sources


def _lift_numerals(term: Term, symbols: SymbolTable) -> Tuple[Term, List[RewriteStep]]:
    sources = _cast_sources(term)
    unique = {target: next(iter(found)) for target, found in sources.items() if len(found) == 1}
    steps: List[RewriteStep] = []
    inside_casts: Set[Tuple[int, ...]] = set()
    for position, sub in iter_subterms(term):
        if isinstance(sub, Coerce):
            inside_casts.add(position + (0,))
    for position, sub in list(iter_subterms(term)):
        if not isinstance(sub, Numeral) or position in inside_casts:
            continue
        source: Optional[Sort] = unique.get(sub.sort)
        if source is None or symbols.coercion(source, sub.sort) is None:
            continue
        lifted = Coerce(source, sub.sort, Numeral(sub.bits, source))
        steps.append(RewriteStep(CAST_NUMERAL, position, Substitution(), sub, lifted))
        term = replace_at(term, position, lifted)
    return term, steps


def _fold_numerals(term: Term) -> Tuple[Term, List[RewriteStep]]:
    steps: List[RewriteStep] = []
    for position, _ in list(iter_postorder(term)):
        current = subterm_at(term, position)
        if isinstance(current, Coerce) and isinstance(current.arg, Numeral):
            folded = Numeral(current.arg.bits, current.target)
            steps.append(RewriteStep(NUMERAL_CAST, position, Substitution(), current, folded))
            term = replace_at(term, position, folded)
    return term, steps


def norm_cast(formula: Rel, env: Env, fuel: int = DEFAULT_FUEL) -> Tuple[Rel, RewriteTrace]:
    """
    Move casts up through operations and out of the relation.

    Returns the normalized relation and the full trace; the trace is empty
    when no cast rule applies.
    """
    if not isinstance(formula, Rel):
        raise RewriteError("norm_cast expects a relation")
    symbols = env.symbols

    lifted, lift_steps = _lift_numerals(formula, symbols)
    rules = env.rules_of_kind(RuleKind.CAST_MOVE, RuleKind.CAST_ELIM)
    moved, trace = simp(lifted, rules, env, fuel, guard=elim_guard(symbols))
    folded, fold_steps = _fold_numerals(moved)

    if not trace.steps:
        logger.debug("norm_cast: no cast rule applies")
        return formula, RewriteTrace(formula, [])
    steps = lift_steps + trace.steps + fold_steps
    logger.debug(f"norm_cast: {len(steps)} step(s), {len(trace.steps)} by cast rules")
    return folded, RewriteTrace(formula, steps)
