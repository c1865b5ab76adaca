from .declarations import (
    DEFAULT_PRIORITY,
    AnyDeclaration,
    Binder,
    ClassDecl,
    CoercionDecl,
    Declaration,
    Goal,
    Hypothesis,
    InstanceRule,
    Lemma,
    OpDecl,
    RewriteRule,
    RuleKind,
    SortDecl,
    SourcePosition,
)
from .formatter import format_atom, format_declaration, format_decls, format_prop, format_statement, format_term
from .parser import (
    DeclarationReader,
    parse_class_atom,
    parse_decls,
    parse_sort,
    parse_statement,
    parse_term,
)
from .props import And, BoundedForall, DecProp, Implies, Not, Or, RelLit
from .sorts import ALPHA, INT, NAT, PROP, RAT, REAL, Sort, SortKind, arrow, carrier, format_sort, sort_var
from .symbols import Coercion, OpSignature, SymbolTable
from .terms import (
    ClassAtom,
    Coerce,
    Numeral,
    Op,
    Position,
    Rel,
    Substitution,
    Term,
    Var,
    free_vars,
    instantiate,
    iter_subterms,
    match,
    replace_at,
    subterm_at,
)

__all__ = [
    # Sorts
    "Sort",
    "SortKind",
    "NAT",
    "INT",
    "RAT",
    "REAL",
    "ALPHA",
    "PROP",
    "carrier",
    "arrow",
    "sort_var",
    "format_sort",

    # Terms
    "Term",
    "Var",
    "Op",
    "Numeral",
    "Coerce",
    "Rel",
    "ClassAtom",
    "Position",
    "Substitution",
    "match",
    "instantiate",
    "free_vars",
    "iter_subterms",
    "subterm_at",
    "replace_at",

    # Propositions
    "DecProp",
    "RelLit",
    "BoundedForall",
    "And",
    "Or",
    "Not",
    "Implies",

    # Declarations
    "Declaration",
    "AnyDeclaration",
    "SortDecl",
    "OpDecl",
    "CoercionDecl",
    "ClassDecl",
    "InstanceRule",
    "RewriteRule",
    "RuleKind",
    "Lemma",
    "Goal",
    "Binder",
    "Hypothesis",
    "SourcePosition",
    "DEFAULT_PRIORITY",

    # Symbols
    "SymbolTable",
    "OpSignature",
    "Coercion",

    # Parsing and printing
    "DeclarationReader",
    "parse_decls",
    "parse_term",
    "parse_statement",
    "parse_sort",
    "parse_class_atom",
    "format_term",
    "format_prop",
    "format_statement",
    "format_atom",
    "format_declaration",
    "format_decls",
]
