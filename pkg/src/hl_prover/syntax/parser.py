"""
Parsing of ``.hl`` sources and free-standing terms.

Text goes through the lark grammar, a transformer turns the tree into surface
nodes, and a ``DeclarationReader`` elaborates the surface declarations in
source order, extending its symbol table as sorts, operators, coercions and
classes are declared.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput

from ..core.exceptions import ParseError, RedeclarationError, UnknownSymbolError
from .declarations import (
    DEFAULT_PRIORITY,
    AnyDeclaration,
    Binder,
    ClassDecl,
    CoercionDecl,
    Goal,
    GoalStatement,
    Hypothesis,
    InstanceRule,
    Lemma,
    OpDecl,
    RewriteRule,
    RuleKind,
    SortDecl,
    SourcePosition,
)
from .elaborate import Elaborator, SAtom, SNode, sort_from_ast
from .grammar import GRAMMAR, START_SYMBOLS
from .sorts import ALPHA, NAT, Sort
from .symbols import PROJECTION_SYMBOLS, Coercion, OpSignature, SymbolTable
from .terms import ClassAtom, Rel, Term

logger = logging.getLogger(__name__)

RELATION_ALIASES = {
    "=": ("=", False),
    "≠": ("≠", False),
    "!=": ("≠", False),
    "≤": ("≤", False),
    "<=": ("≤", False),
    "<": ("<", False),
    "≥": ("≤", True),
    ">=": ("≤", True),
    ">": ("<", True),
    "∣": ("∣", False),
    "dvd": ("∣", False),
}

SYMBOL_ALIASES = {"*.": "•", ">>": "≫"}


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    return Lark(GRAMMAR, start=START_SYMBOLS, parser="earley", propagate_positions=True)


@dataclass
class SurfaceDecl:
    kind: str
    name: str
    fields: Dict[str, Any] = field(default_factory=dict)
    doc: Optional[str] = None
    attributes: Tuple[str, ...] = ()
    line: Optional[int] = None
    column: Optional[int] = None


def _pos(meta) -> Dict[str, Optional[int]]:
    if getattr(meta, "empty", True):
        return {"line": None, "column": None}
    return {"line": meta.line, "column": meta.column}


@v_args(meta=True)
class SurfaceBuilder(Transformer):
    """Turns the lark tree into surface nodes and surface declarations"""

    def start(self, meta, children):
        return list(children)

    def declaration(self, meta, children):
        doc, attributes, body = children
        return replace(body, doc=doc, attributes=attributes or ())

    def doc(self, meta, children):
        return str(children[0])[3:-2].strip()

    def attributes(self, meta, children):
        return tuple(children)

    def attribute(self, meta, children):
        name, value = children
        return str(name) if value is None else f"{name}={value}"

    def sort_decl(self, meta, children):
        return SurfaceDecl("sort", str(children[0]), **_pos(meta))

    def op_decl(self, meta, children):
        symbol, signature = children
        return SurfaceDecl("op", symbol, {"signature": signature}, **_pos(meta))

    def op_symbol(self, meta, children):
        symbol = str(children[0])
        return SYMBOL_ALIASES.get(symbol, symbol)

    def coercion_decl(self, meta, children):
        source, target = children
        return SurfaceDecl("coercion", "", {"source": source, "target": target}, **_pos(meta))

    def class_decl(self, meta, children):
        name, *params, body = children
        return SurfaceDecl(
            "class",
            str(name),
            {"params": tuple(str(p) for p in params), "items": body or []},
            **_pos(meta),
        )

    def class_body(self, meta, children):
        return list(children)

    def projection(self, meta, children):
        token = str(children[0])
        return ("proj", token, meta.line, meta.column)

    def class_op(self, meta, children):
        name, signature = children
        return ("op", str(name), signature, meta.line, meta.column)

    def instance_rule(self, meta, children):
        name, head, *body = children
        return SurfaceDecl("instance", str(name), {"head": head, "body": body}, **_pos(meta))

    def instance_arrow(self, meta, children):
        name, *atoms = children
        return SurfaceDecl("instance", str(name), {"head": atoms[-1], "body": atoms[:-1]}, **_pos(meta))

    def atom_call(self, meta, children):
        name, *args = children
        return SAtom(str(name), tuple(args), name.line, name.column)

    atom_juxt = atom_call

    def rule_decl(self, meta, children):
        kind, name, params, statement = children
        return SurfaceDecl(
            "rule", str(name), {"kind": kind, "params": params, "statement": statement}, **_pos(meta)
        )

    def rule_kind(self, meta, children):
        return str(children[0])

    def lemma_decl(self, meta, children):
        name, params, statement = children
        return SurfaceDecl("lemma", str(name), {"params": params, "statement": statement}, **_pos(meta))

    def goal_decl(self, meta, children):
        name, params, statement, tactic = children
        return SurfaceDecl(
            "goal",
            str(name),
            {"params": params, "statement": statement, "tactic": str(tactic) if tactic else None},
            **_pos(meta),
        )

    def params(self, meta, children):
        return list(children)

    def binder(self, meta, children):
        *names, sort = children
        return ("binder", tuple(str(n) for n in names), sort)

    def hypothesis(self, meta, children):
        name, statement = children
        return ("hyp", str(name), statement)

    def condition(self, meta, children):
        return ("cond", children[0])

    def sort_name(self, meta, children):
        return ("name", str(children[0]))

    def arrow_sort(self, meta, children):
        return ("arrow", children[0], children[1])

    # -- propositions -------------------------------------------------------

    def forall(self, meta, children):
        name, bound, body = children
        return SNode("forall", (bound, body), str(name), **_pos(meta))

    def implies(self, meta, children):
        return SNode("implies", tuple(children), **_pos(meta))

    def or_(self, meta, children):
        return SNode("or", tuple(children), **_pos(meta))

    def and_(self, meta, children):
        return SNode("and", tuple(children), **_pos(meta))

    def not_(self, meta, children):
        return SNode("not", tuple(children), **_pos(meta))

    def iff(self, meta, children):
        return SNode("iff", tuple(children), **_pos(meta))

    def relation(self, meta, children):
        left, symbol, right = children
        canonical, flipped = RELATION_ALIASES[symbol]
        if flipped:
            left, right = right, left
        return SNode("rel", (left, right), canonical, **_pos(meta))

    def relop(self, meta, children):
        return str(children[0])

    # -- terms --------------------------------------------------------------

    def _op(self, symbol, meta, children):
        return SNode("op", tuple(children), symbol, **_pos(meta))

    def add(self, meta, children):
        return self._op("+", meta, children)

    def sub(self, meta, children):
        return self._op("-", meta, children)

    def mul(self, meta, children):
        return self._op("*", meta, children)

    def smul(self, meta, children):
        return self._op("•", meta, children)

    def comp(self, meta, children):
        return self._op("≫", meta, children)

    def neg(self, meta, children):
        return self._op("neg", meta, children)

    def pow(self, meta, children):
        return self._op("^", meta, children)

    def norm(self, meta, children):
        return self._op("norm", meta, children)

    def coe(self, meta, children):
        return SNode("coe", tuple(children), **_pos(meta))

    def call(self, meta, children):
        return SNode("call", tuple(children), **_pos(meta))

    def numeral(self, meta, children):
        token = children[0]
        return SNode("num", (), int(token), token.line, token.column)

    def name(self, meta, children):
        token = children[0]
        return SNode("name", (), str(token), token.line, token.column)

    def ascription(self, meta, children):
        expr, sort = children
        return SNode("ascribe", (expr,), sort, **_pos(meta))

    def term_entry(self, meta, children):
        return children[0]

    sort_entry = term_entry
    atom_entry = term_entry
    goal_entry = term_entry


def _parse_tree(source: str, start: str):
    try:
        tree = get_parser().parse(source, start=start)
    except UnexpectedEOF as e:
        lines = source.splitlines() or [""]
        raise ParseError("unexpected end of input", len(lines), len(lines[-1]) + 1) from e
    except UnexpectedCharacters as e:
        raise ParseError(f"unexpected character {source[e.pos_in_stream]!r}", e.line, e.column) from e
    except UnexpectedInput as e:
        token = getattr(e, "token", None)
        text = f"unexpected token {str(token)!r}" if token is not None else "syntax error"
        raise ParseError(text, getattr(e, "line", None), getattr(e, "column", None)) from e
    return SurfaceBuilder().transform(tree)


def symbols_of(env) -> SymbolTable:
    """Accept an Env, a SymbolTable or None (prelude)"""
    if env is None:
        return SymbolTable.prelude()
    if isinstance(env, SymbolTable):
        return env
    return env.symbols


class DeclarationReader:
    """Elaborates surface declarations in order against a growing symbol table"""

    def __init__(self, symbols: Optional[SymbolTable] = None):
        self.symbols = symbols.copy() if symbols is not None else SymbolTable.prelude()
        self.names: Dict[str, SourcePosition] = {}
        self.declarations: List[AnyDeclaration] = []

    def elaborate_all(self, source: str) -> Iterator[AnyDeclaration]:
        """Elaborate lazily; each declaration must be declared before the next is produced"""
        for surface in _parse_tree(source, "start"):
            yield self._elaborate(surface)

    def read(self, source: str) -> List[AnyDeclaration]:
        for decl in self.elaborate_all(source):
            self.declare(decl)
            self.declarations.append(decl)
        return self.declarations

    # -- registration ---------------------------------------------------------

    def declare(self, decl: AnyDeclaration) -> None:
        """Record a declaration's names and symbols; raises on clashes"""
        line = decl.position.line if decl.position else None
        column = decl.position.column if decl.position else None
        if isinstance(decl, SortDecl):
            if self.symbols.resolve_sort_name(decl.name) is not None:
                raise RedeclarationError(f"sort '{decl.name}' already declared", line, column)
            self.symbols.add_sort(decl.name)
            return
        if isinstance(decl, OpDecl):
            self._declare_op(decl, line, column)
            return
        if isinstance(decl, CoercionDecl):
            if self.symbols.coercion(decl.source, decl.target) is not None:
                raise RedeclarationError(f"coercion {decl.source} -> {decl.target} already declared", line, column)
            self.symbols.add_coercion(Coercion(decl.source, decl.target, decl.injective))
            return
        if decl.name in self.names:
            first = self.names[decl.name]
            raise RedeclarationError(
                f"'{decl.name}' already declared at line {first.line}", line, column
            )
        self.names[decl.name] = decl.position or SourcePosition(0, 0)
        if isinstance(decl, ClassDecl):
            self._declare_class(decl, line, column)

    def _declare_class(self, decl: ClassDecl, line, column) -> None:
        for op in decl.operations:
            if op.name in self.symbols.ops:
                raise RedeclarationError(f"operator '{op.name}' already declared", line, column)
        for symbol in decl.projections:
            owner = self.symbols.projection_owner.get(symbol)
            if owner is not None:
                raise RedeclarationError(
                    f"projection '{symbol}' already bundled by class '{owner}'", line, column
                )
        self.symbols.classes[decl.name] = decl.params
        for op in decl.operations:
            self.symbols.add_op(OpSignature(op.name, op.params, op.result, owner=decl.name))
        for symbol in decl.projections:
            self.symbols.projection_owner[symbol] = decl.name

    def _declare_op(self, decl: OpDecl, line, column) -> None:
        existing = self.symbols.ops.get(decl.name)
        attributes = frozenset(decl.attributes)
        if decl.result is None:
            if existing is None:
                raise UnknownSymbolError(f"unknown operator '{decl.name}'", line, column)
            self.symbols.add_attributes(decl.name, attributes)
            return
        if existing is not None:
            raise RedeclarationError(f"operator '{decl.name}' already declared", line, column)
        self.symbols.add_op(OpSignature(decl.name, decl.params, decl.result, attributes))

    # -- elaboration --------------------------------------------------------

    def _elaborate(self, s: SurfaceDecl) -> AnyDeclaration:
        common = {
            "name": s.name,
            "doc": s.doc,
            "attributes": s.attributes,
            "position": SourcePosition(s.line, s.column) if s.line is not None else None,
        }
        handler = getattr(self, f"_elaborate_{s.kind}")
        return handler(s, common)

    def _elaborate_sort(self, s: SurfaceDecl, common) -> SortDecl:
        return SortDecl(sort=Sort(s.name), **common)

    def _elaborate_op(self, s: SurfaceDecl, common) -> OpDecl:
        signature = s.fields["signature"]
        if signature is None:
            return OpDecl(**common)
        params, result = _split_signature(sort_from_ast(signature, self.symbols))
        return OpDecl(params=params, result=result, **common)

    def _elaborate_coercion(self, s: SurfaceDecl, common) -> CoercionDecl:
        source = self._ground_sort(s.fields["source"], s)
        target = self._ground_sort(s.fields["target"], s)
        if source == target:
            raise ParseError(f"coercion from {source} to itself", s.line, s.column)
        common["name"] = f"coe_{source}_{target}"
        return CoercionDecl(source=source, target=target, **common)

    def _ground_sort(self, ast, s: SurfaceDecl) -> Sort:
        sort = sort_from_ast(ast, self.symbols)
        if not sort.is_ground:
            raise UnknownSymbolError(f"unknown sort '{sort}'", s.line, s.column)
        return sort

    def _elaborate_class(self, s: SurfaceDecl, common) -> ClassDecl:
        params = s.fields["params"]
        if len(params) not in (1, 2):
            raise ParseError(f"class '{s.name}' must have one or two parameters", s.line, s.column)
        projections: List[str] = []
        operations: List[OpDecl] = []
        for item in s.fields["items"]:
            if item[0] == "proj":
                _, token, line, column = item
                symbol = PROJECTION_SYMBOLS.get(token, token)
                local = any(op.name == symbol for op in operations)
                if symbol not in PROJECTION_SYMBOLS.values() and symbol not in self.symbols.ops and not local:
                    raise UnknownSymbolError(f"unknown projection '{token}'", line, column)
            else:
                _, symbol, signature, line, column = item
                op_params, result = _split_signature(sort_from_ast(signature, self.symbols))
                operations.append(
                    OpDecl(name=symbol, params=op_params, result=result, position=SourcePosition(line, column))
                )
            if symbol in projections:
                raise RedeclarationError(f"projection '{symbol}' listed twice", line, column)
            projections.append(symbol)
        return ClassDecl(params=params, projections=tuple(projections), operations=tuple(operations), **common)

    def _elaborate_instance(self, s: SurfaceDecl, common) -> InstanceRule:
        elaborator = Elaborator(self.symbols, ALPHA)
        head = elaborator.class_atom(s.fields["head"])
        body = tuple(elaborator.class_atom(a) for a in s.fields["body"])
        priority = DEFAULT_PRIORITY
        for attribute in s.attributes:
            if attribute.startswith("priority="):
                value = attribute.split("=", 1)[1]
                if not value.isdigit():
                    raise ParseError(f"priority must be an integer, got '{value}'", s.line, s.column)
                priority = int(value)
        return InstanceRule(head=head, body=body, priority=priority, **common)

    def _params(self, s: SurfaceDecl, default_sort: Sort):
        binders: List[Binder] = []
        for item in s.fields["params"]:
            if item[0] == "binder":
                sort = sort_from_ast(item[2], self.symbols)
                binders.extend(Binder(name, sort) for name in item[1])
        default = binders[0].sort if binders else default_sort
        elaborator = Elaborator(self.symbols, default, {b.name: b.sort for b in binders})
        hypotheses: List[Hypothesis] = []
        conditions: List[ClassAtom] = []
        for item in s.fields["params"]:
            if item[0] == "hyp":
                hypotheses.append(Hypothesis(item[1], elaborator.relation(item[2])))
            elif item[0] == "cond":
                conditions.append(elaborator.class_atom(item[1]))
        return elaborator, binders, hypotheses, conditions

    def _implicit_binders(self, elaborator: Elaborator, binders: List[Binder]) -> Tuple[Binder, ...]:
        declared = {b.name for b in binders}
        extra = [Binder(n, srt) for n, srt in elaborator.variables.items() if n not in declared]
        return tuple(binders) + tuple(extra)

    def _elaborate_rule(self, s: SurfaceDecl, common) -> RewriteRule:
        kind = RuleKind.SIMP if s.fields["kind"] == "simp" else RuleKind.DEF
        return self._rewrite_rule(s, common, kind)

    def _rewrite_rule(self, s: SurfaceDecl, common, kind: RuleKind) -> RewriteRule:
        elaborator, binders, hypotheses, conditions = self._params(s, ALPHA)
        if hypotheses:
            raise ParseError("rewrite rules cannot take hypotheses", s.line, s.column)
        statement = elaborator.prop(s.fields["statement"])
        if not isinstance(statement, Rel) or statement.symbol != "=":
            raise ParseError("rewrite rule must be an equation or ↔", s.line, s.column)
        return RewriteRule(
            lhs=statement.lhs,
            rhs=statement.rhs,
            kind=kind,
            conditions=tuple(conditions),
            binders=self._implicit_binders(elaborator, binders),
            **common,
        )

    def _elaborate_lemma(self, s: SurfaceDecl, common) -> Union[Lemma, RewriteRule]:
        attributes = set(s.attributes)
        if "simp" in attributes:
            return self._rewrite_rule(s, common, RuleKind.SIMP)
        if "norm_cast_move" in attributes:
            return self._rewrite_rule(s, common, RuleKind.CAST_MOVE)
        if "norm_cast_elim" in attributes:
            return self._rewrite_rule(s, common, RuleKind.CAST_ELIM)
        elaborator, binders, hypotheses, conditions = self._params(s, ALPHA)
        statement = elaborator.prop(s.fields["statement"])
        if not isinstance(statement, Rel):
            raise ParseError("lemma statement must be a relation", s.line, s.column)
        return Lemma(
            statement=statement,
            binders=self._implicit_binders(elaborator, binders),
            hypotheses=tuple(hypotheses),
            conditions=tuple(conditions),
            **common,
        )

    def _elaborate_goal(self, s: SurfaceDecl, common) -> Goal:
        elaborator, binders, hypotheses, conditions = self._params(s, NAT)
        if conditions:
            raise ParseError("goals cannot take class conditions", s.line, s.column)
        raw = s.fields["statement"]
        statement: GoalStatement
        if isinstance(raw, SAtom):
            statement = elaborator.class_atom(raw)
        else:
            statement = elaborator.prop(raw)
        tactic = s.fields["tactic"]
        if tactic is None and isinstance(statement, ClassAtom):
            tactic = "resolve"
        return Goal(
            statement=statement,
            binders=self._implicit_binders(elaborator, binders),
            hypotheses=tuple(hypotheses),
            tactic=tactic,
            default_sort=elaborator.default_sort,
            **common,
        )


def _split_signature(sort: Sort) -> Tuple[Tuple[Sort, ...], Sort]:
    params: List[Sort] = []
    while sort.is_arrow:
        params.append(sort.domain)
        sort = sort.codomain
    return tuple(params), sort


def parse_decls(source: str, symbols: Optional[SymbolTable] = None) -> List[AnyDeclaration]:
    """Parse a ``.hl`` source into declarations, in source order"""
    return DeclarationReader(symbols).read(source)


def parse_term(
    source: str,
    env=None,
    sort: Optional[Sort] = None,
    variables: Optional[Dict[str, Sort]] = None,
    pattern: bool = True,
) -> Term:
    """
    Parse and sort a term or relation.

    ``sort`` is the default for otherwise unconstrained numerals and
    variables (``nat`` when omitted); ``variables`` fixes sorts of named
    variables. Outside pattern mode every variable must be in ``variables``.
    """
    node = _parse_tree(source, "term_entry")
    elaborator = Elaborator(symbols_of(env), sort or NAT, variables, pattern)
    return elaborator.term(node)


def parse_statement(
    source: str,
    env=None,
    sort: Optional[Sort] = None,
    variables: Optional[Dict[str, Sort]] = None,
) -> Tuple[GoalStatement, Dict[str, Sort]]:
    """Parse a goal statement: class atom, relation or decidable proposition"""
    node = _parse_tree(source, "goal_entry")
    elaborator = Elaborator(symbols_of(env), sort or NAT, variables)
    if isinstance(node, SAtom):
        return elaborator.class_atom(node), elaborator.variables
    return elaborator.prop(node), elaborator.variables


def parse_sort(source: str, env=None) -> Sort:
    return sort_from_ast(_parse_tree(source, "sort_entry"), symbols_of(env))


def parse_class_atom(source: str, env=None) -> ClassAtom:
    node = _parse_tree(source, "atom_entry")
    return Elaborator(symbols_of(env), ALPHA).class_atom(node)
