"""
Rendering of terms, propositions and declarations back to ``.hl`` text.

``format_term`` round-trips: ascriptions ``(e : S)`` are added one at a time,
at the first node whose sort the re-parse gets wrong, until the printed text
parses back to the same term.
"""

from typing import Dict, Iterable, List, Optional, Set

from ..core.exceptions import ParseError
from .declarations import (
    DEFAULT_PRIORITY,
    AnyDeclaration,
    Binder,
    ClassDecl,
    CoercionDecl,
    Goal,
    InstanceRule,
    Lemma,
    OpDecl,
    RewriteRule,
    RuleKind,
    SortDecl,
)
from .props import And, BoundedForall, DecProp, Implies, Not, Or, RelLit
from .sorts import NAT, Sort, atomic_sort, format_sort
from .terms import ClassAtom, Coerce, Numeral, Op, Position, Rel, Term, Var, children, term_size

UNICODE = {
    "coe": "↑",
    "•": "•",
    "≫": "≫",
    "norm": ("∥", "∥"),
    "≤": "≤",
    "≠": "≠",
    "∣": "∣",
    "iff": "↔",
    "and": "∧",
    "or": "∨",
    "not": "¬",
    "implies": "→",
    "forall": "∀",
}
ASCII = {
    "coe": "^^",
    "•": "*.",
    "≫": ">>",
    "norm": ("||", "||"),
    "≤": "<=",
    "≠": "!=",
    "∣": "dvd",
    "iff": "<->",
    "and": "/\\",
    "or": "\\/",
    "not": "~",
    "implies": "->",
    "forall": "forall",
}

BINARY_LEVELS = {"+": 65, "-": 65, "*": 70, "•": 70, "≫": 75}
NEG_LEVEL = 80
POW_LEVEL = 90
COE_LEVEL = 95
ATOM_LEVEL = 100


class _Renderer:
    def __init__(self, ascribed: Set[Position], ascii: bool):
        self.ascribed = ascribed
        self.table = ASCII if ascii else UNICODE

    def render(self, term: Term, position: Position = (), level: int = 0) -> str:
        if position in self.ascribed and not isinstance(term, Rel):
            inner = self._render(term, position, 0)
            return f"({inner} : {format_sort(term.sort)})"
        return self._render(term, position, level)

    def _wrap(self, text: str, own: int, level: int) -> str:
        return f"({text})" if own < level else text

    def _render(self, term: Term, position: Position, level: int) -> str:
        if isinstance(term, Var):
            return term.name
        if isinstance(term, Numeral):
            return str(term.value)
        if isinstance(term, Coerce):
            arg = self.render(term.arg, position + (0,), COE_LEVEL)
            return self._wrap(f"{self.table['coe']}{arg}", COE_LEVEL, level)
        if isinstance(term, Rel):
            return self._relation(term, position)
        return self._op(term, position, level)

    def _relation(self, rel: Rel, position: Position) -> str:
        lhs = self.render(rel.lhs, position + (0,), 0)
        rhs = self.render(rel.rhs, position + (1,), 0)
        if rel.is_iff:
            return f"{lhs} {self.table['iff']} {rhs}"
        symbol = self.table.get(rel.symbol, rel.symbol)
        return f"{lhs} {symbol} {rhs}"

    def _op(self, term: Op, position: Position, level: int) -> str:
        symbol, args = term.symbol, term.args
        if symbol in BINARY_LEVELS and len(args) == 2:
            own = BINARY_LEVELS[symbol]
            left = self.render(args[0], position + (0,), own)
            right = self.render(args[1], position + (1,), own + 1)
            shown = self.table.get(symbol, symbol)
            return self._wrap(f"{left} {shown} {right}", own, level)
        if symbol == "neg" and len(args) == 1:
            arg = self.render(args[0], position + (0,), NEG_LEVEL)
            return self._wrap(f"-{arg}", NEG_LEVEL, level)
        if symbol == "^" and len(args) == 2:
            base = self.render(args[0], position + (0,), COE_LEVEL)
            exponent = self.render(args[1], position + (1,), POW_LEVEL)
            return self._wrap(f"{base} ^ {exponent}", POW_LEVEL, level)
        if symbol == "norm" and len(args) == 1:
            opening, closing = self.table["norm"]
            return f"{opening}{self.render(args[0], position + (0,), 0)}{closing}"
        if symbol == "app" and len(args) == 2:
            fn = self.render(args[0], position + (0,), ATOM_LEVEL)
            return f"{fn}({self.render(args[1], position + (1,), 0)})"
        if not args:
            return symbol
        rendered = ", ".join(self.render(a, position + (i,), 0) for i, a in enumerate(args))
        return f"{symbol}({rendered})"


def _first_difference(expected: Term, actual: Term, position: Position = ()) -> Optional[Position]:
    if type(expected) is not type(actual):
        return position
    if isinstance(expected, Op) and (expected.symbol != actual.symbol or len(expected.args) != len(actual.args)):
        return position
    if isinstance(expected, Rel) and expected.symbol != actual.symbol:
        return position
    if expected.sort != actual.sort:
        return position
    if isinstance(expected, Coerce) and expected.source != actual.source:
        return position + (0,)
    for i, (e, a) in enumerate(zip(children(expected), children(actual))):
        found = _first_difference(e, a, position + (i,))
        if found is not None:
            return found
    if expected != actual:
        return position
    return None


def _coercion_positions(term: Term, position: Position = ()) -> Set[Position]:
    found: Set[Position] = set()
    if isinstance(term, Coerce):
        found.update({position, position + (0,)})
    for i, child in enumerate(children(term)):
        found |= _coercion_positions(child, position + (i,))
    return found


def format_term(
    term: Term,
    env=None,
    sort: Optional[Sort] = None,
    variables: Optional[Dict[str, Sort]] = None,
    ascii: bool = False,
) -> str:
    """Render ``term`` so that ``parse_term`` with the same context gives it back"""
    from .parser import parse_term, symbols_of

    symbols = symbols_of(env)
    ascribed: Set[Position] = set()
    renderer = _Renderer(ascribed, ascii)
    text = renderer.render(term)
    for _ in range(term_size(term) + 2):
        try:
            reparsed = parse_term(text, symbols, sort, variables)
        except ParseError:
            extra = _coercion_positions(term) - ascribed
            if not extra:
                return text
            ascribed |= extra
        else:
            position = _first_difference(term, reparsed)
            if position is None or position in ascribed:
                return text
            ascribed.add(position)
        text = renderer.render(term)
    return text


def format_atom(atom: ClassAtom) -> str:
    return f"{atom.cls}({', '.join(format_sort(a) for a in atom.args)})"


_PROP_LEVELS = {Implies: 1, Or: 2, And: 3, Not: 4}


def format_prop(
    prop: DecProp,
    env=None,
    sort: Optional[Sort] = None,
    variables: Optional[Dict[str, Sort]] = None,
    ascii: bool = False,
    level: int = 0,
) -> str:
    table = ASCII if ascii else UNICODE
    variables = dict(variables or {})

    def sub(p, lvl, scope=variables):
        return format_prop(p, env, sort, scope, ascii, lvl)

    if isinstance(prop, RelLit):
        return format_term(prop.rel, env, sort, variables, ascii)
    if isinstance(prop, BoundedForall):
        scope = dict(variables)
        scope[prop.var] = NAT
        bound = f" < {prop.bound.value}" if prop.bound is not None else ""
        text = f"{table['forall']} {prop.var}{bound}, {sub(prop.body, 0, scope)}"
        return f"({text})" if level > 0 else text
    own = _PROP_LEVELS[type(prop)]
    if isinstance(prop, Not):
        text = f"{table['not']}{sub(prop.arg, own)}"
    elif isinstance(prop, Implies):
        text = f"{sub(prop.left, own + 1)} {table['implies']} {sub(prop.right, own)}"
    else:
        key = "and" if isinstance(prop, And) else "or"
        text = f"{sub(prop.left, own)} {table[key]} {sub(prop.right, own + 1)}"
    return f"({text})" if own < level else text


def format_statement(statement, env=None, sort=None, variables=None, ascii: bool = False) -> str:
    if isinstance(statement, ClassAtom):
        return format_atom(statement)
    if isinstance(statement, (Var, Op, Numeral, Coerce, Rel)):
        return format_term(statement, env, sort, variables, ascii)
    return format_prop(statement, env, sort, variables, ascii)


def _binders_text(binders: Iterable[Binder]) -> str:
    groups: List[List[Binder]] = []
    for binder in binders:
        if groups and groups[-1][0].sort == binder.sort:
            groups[-1].append(binder)
        else:
            groups.append([binder])
    return " ".join(f"({' '.join(b.name for b in g)} : {format_sort(g[0].sort)})" for g in groups)


def _header(decl: AnyDeclaration, attributes: Iterable[str]) -> List[str]:
    lines = []
    if decl.doc:
        lines.append(f"/-- {decl.doc} -/")
    attributes = list(attributes)
    prefix = f"[{', '.join(attributes)}] " if attributes else ""
    return lines + [prefix]


def format_declaration(decl: AnyDeclaration, env=None) -> str:
    """Render one declaration as ``.hl`` source"""
    from .parser import symbols_of

    symbols = symbols_of(env)
    attributes = list(decl.attributes)
    if isinstance(decl, SortDecl):
        body = f"sort {decl.name}"
    elif isinstance(decl, OpDecl):
        body = f"op {decl.name}"
        if decl.result is not None:
            body += " : " + " -> ".join(atomic_sort(s) for s in decl.params + (decl.result,))
    elif isinstance(decl, CoercionDecl):
        body = f"coercion {atomic_sort(decl.source)} -> {atomic_sort(decl.target)}"
    elif isinstance(decl, ClassDecl):
        body = f"class {decl.name} ({' '.join(decl.params)})"
        operations = {op.name: op for op in decl.operations}
        items = []
        for symbol in decl.projections:
            op = operations.get(symbol)
            if op is not None:
                sig = " -> ".join(atomic_sort(s) for s in op.params + (op.result,))
                items.append(f"op {symbol} : {sig}")
            else:
                items.append(symbol)
        if items:
            body += " { " + " ; ".join(items) + " }"
    elif isinstance(decl, InstanceRule):
        if decl.priority != DEFAULT_PRIORITY and not decl.has_attribute("priority"):
            attributes.insert(0, f"priority={decl.priority}")
        body = f"instance {decl.name} : {format_atom(decl.head)}"
        if decl.body:
            body += " <- " + ", ".join(format_atom(a) for a in decl.body)
    elif isinstance(decl, RewriteRule):
        body = _rule_text(decl, symbols, attributes)
    elif isinstance(decl, Lemma):
        body = _lemma_text(decl, symbols)
    elif isinstance(decl, Goal):
        body = _goal_text(decl, symbols)
    else:
        raise TypeError(f"cannot format {type(decl).__name__}")
    *doc, prefix = _header(decl, attributes)
    return "\n".join(doc + [prefix + body])


def _context(binders):
    variables = {b.name: b.sort for b in binders}
    default = binders[0].sort if binders else None
    return variables, default


def _params_text(decl) -> str:
    parts = [_binders_text(decl.binders)] if decl.binders else []
    return " ".join(parts)


def _rule_text(rule: RewriteRule, symbols, attributes: List[str]) -> str:
    variables, default = _context(rule.binders)
    default = default or Sort("α")
    keyword = "lemma"
    if rule.kind == RuleKind.SIMP and "simp" not in attributes:
        keyword = "simp lemma"
    elif rule.kind == RuleKind.DEF:
        keyword = "def lemma"
    elif rule.kind == RuleKind.CAST_MOVE and "norm_cast_move" not in attributes:
        attributes.append("norm_cast_move")
    elif rule.kind == RuleKind.CAST_ELIM and "norm_cast_elim" not in attributes:
        attributes.append("norm_cast_elim")
    params = [_params_text(rule)] + [f"[{format_atom(c)}]" for c in rule.conditions]
    params_text = " ".join(p for p in params if p)
    statement = format_term(rule.statement, symbols, default, variables)
    return f"{keyword} {rule.name}{' ' + params_text if params_text else ''} : {statement}"


def _lemma_text(lemma: Lemma, symbols) -> str:
    variables, default = _context(lemma.binders)
    default = default or Sort("α")
    params = [_params_text(lemma)]
    params += [f"({h.name} : {format_term(h.statement, symbols, default, variables)})" for h in lemma.hypotheses]
    params += [f"[{format_atom(c)}]" for c in lemma.conditions]
    params_text = " ".join(p for p in params if p)
    statement = format_term(lemma.statement, symbols, default, variables)
    return f"lemma {lemma.name}{' ' + params_text if params_text else ''} : {statement}"


def _goal_text(goal: Goal, symbols) -> str:
    variables, default = _context(goal.binders)
    default = default or NAT
    params = [_params_text(goal)]
    params += [f"({h.name} : {format_term(h.statement, symbols, default, variables)})" for h in goal.hypotheses]
    params_text = " ".join(p for p in params if p)
    statement = format_statement(goal.statement, symbols, default, variables)
    text = f"goal {goal.name}{' ' + params_text if params_text else ''} : {statement}"
    if goal.tactic and not (goal.is_class_goal and goal.tactic == "resolve"):
        text += f" by {goal.tactic}"
    return text


def format_decls(decls: Iterable[AnyDeclaration]) -> str:
    """Render declarations in order, one per line"""
    from .parser import DeclarationReader

    reader = DeclarationReader()
    chunks = []
    for decl in decls:
        chunks.append(format_declaration(decl, reader.symbols))
        reader.declare(decl)
    return "\n".join(chunks) + ("\n" if chunks else "")
