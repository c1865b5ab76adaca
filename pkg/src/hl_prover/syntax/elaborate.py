"""
Sort inference for surface terms.

Numerals, pattern variables and operator signatures get sort metavariables;
equality constraints are solved by unification as they are generated and
coercion constraints are solved afterwards, whenever one side is known and the
declared coercion out of (or into) it is unique. Metavariables still open after
that take the default sort in order of first occurrence.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from ..core.exceptions import ParseError, SortMismatchError, UnknownSymbolError
from .props import And, BoundedForall, DecProp, Implies, Not, Or, RelLit
from .sorts import NAT, PROP, Sort, arrow, format_sort
from .symbols import OpSignature, SymbolTable
from .terms import ClassAtom, Coerce, Numeral, Op, Rel, Term, Var

logger = logging.getLogger(__name__)


@dataclass
class SNode:
    """Surface syntax node as produced by the grammar"""
    kind: str
    args: Tuple[Any, ...] = ()
    value: Any = None
    line: Optional[int] = None
    column: Optional[int] = None


@dataclass
class SAtom:
    cls: str
    args: Tuple[Any, ...]
    line: Optional[int] = None
    column: Optional[int] = None


class _Meta:
    __slots__ = ("id",)

    def __init__(self, ident: int):
        self.id = ident

    def __repr__(self) -> str:
        return f"?{self.id}"


@dataclass(frozen=True)
class _Arrow:
    domain: Any
    codomain: Any


Ty = Union[Sort, _Meta, _Arrow]

PROP_CONNECTIVES = ("forall", "implies", "or", "and", "not", "iff_prop")


def sort_from_ast(ast, symbols: SymbolTable) -> Sort:
    """Sort syntax to a ``Sort``; unknown names become sort variables"""
    if ast[0] == "arrow":
        return arrow(sort_from_ast(ast[1], symbols), sort_from_ast(ast[2], symbols))
    if ast[1] == "Prop":
        return PROP
    return symbols.sort_or_variable(ast[1])


class Elaborator:
    """
    Elaborates the surface syntax of one declaration.

    ``variables`` holds the sorts of binders; in pattern mode unknown
    lowercase names become variables and their inferred sorts are added to it,
    so later statements of the same declaration see them.
    """

    def __init__(
        self,
        symbols: SymbolTable,
        default_sort: Sort,
        variables: Optional[Dict[str, Sort]] = None,
        pattern: bool = True,
    ):
        self.symbols = symbols
        self.default_sort = default_sort
        self.variables: Dict[str, Sort] = dict(variables or {})
        self.pattern = pattern

    def sort(self, ast) -> Sort:
        return sort_from_ast(ast, self.symbols)

    def class_atom(self, atom: SAtom) -> ClassAtom:
        params = self.symbols.classes.get(atom.cls)
        if params is None:
            raise UnknownSymbolError(f"unknown class '{atom.cls}'", atom.line, atom.column)
        if len(params) != len(atom.args):
            raise ParseError(
                f"class '{atom.cls}' expects {len(params)} argument(s), got {len(atom.args)}",
                atom.line,
                atom.column,
            )
        return ClassAtom(atom.cls, tuple(self.sort(a) for a in atom.args))

    def term(self, node: SNode, expected: Optional[Sort] = None) -> Term:
        if node.kind in PROP_CONNECTIVES:
            raise ParseError("expected a term, found a proposition", node.line, node.column)
        return _Inference(self).run(node, expected)

    def relation(self, node: SNode) -> Rel:
        term = self.term(node)
        if not isinstance(term, Rel):
            raise ParseError("expected a relation", node.line, node.column)
        return term

    def prop(self, node: SNode) -> Union[Rel, DecProp]:
        """A relation when the statement has no connectives, else a DecProp"""
        if node.kind in ("rel", "iff"):
            return self.relation(node)
        return self.dec_prop(node)

    def dec_prop(self, node: SNode) -> DecProp:
        kind = node.kind
        if kind in ("rel", "iff"):
            return RelLit(self.relation(node))
        if kind == "not":
            return Not(self.dec_prop(node.args[0]))
        if kind in ("and", "or", "implies"):
            ctor = {"and": And, "or": Or, "implies": Implies}[kind]
            return ctor(self.dec_prop(node.args[0]), self.dec_prop(node.args[1]))
        if kind == "forall":
            var = node.value
            bound_node, body_node = node.args
            bound = None
            if bound_node is not None:
                bound = self.term(bound_node, NAT)
                if not isinstance(bound, Numeral):
                    raise ParseError("quantifier bound must be a literal", bound_node.line, bound_node.column)
            outer = self.variables.get(var)
            self.variables[var] = NAT
            try:
                body = self.dec_prop(body_node)
            finally:
                if outer is None:
                    self.variables.pop(var, None)
                else:
                    self.variables[var] = outer
            return BoundedForall(var, bound, body)
        raise ParseError("expected a proposition", node.line, node.column)


class _Inference:
    """Constraint state for one term or relation"""

    def __init__(self, elaborator: Elaborator):
        self.elab = elaborator
        self.symbols = elaborator.symbols
        self._ids = itertools.count()
        self.metas: List[_Meta] = []
        self.bound: Dict[int, Ty] = {}
        self.types: Dict[Any, Ty] = {}
        self.local_vars: Dict[str, Ty] = {}
        self.coercions: List[Tuple[Ty, Ty, SNode]] = []

    def run(self, node: SNode, expected: Optional[Sort]) -> Term:
        ty = self.infer(node)
        if expected is not None:
            self.unify(ty, self.to_ty(expected), node)
        self.solve()
        term = self.build(node)
        for name, var_ty in self.local_vars.items():
            self.elab.variables[name] = self.to_sort(var_ty)
        return term

    # -- types -------------------------------------------------------------

    def fresh(self) -> _Meta:
        meta = _Meta(next(self._ids))
        self.metas.append(meta)
        return meta

    def to_ty(self, sort: Sort) -> Ty:
        if sort.is_arrow:
            return _Arrow(self.to_ty(sort.domain), self.to_ty(sort.codomain))
        return sort

    def instantiate(self, signature: OpSignature) -> Tuple[List[Ty], Ty]:
        fresh: Dict[str, _Meta] = {}

        def convert(sort: Sort) -> Ty:
            if sort.is_variable:
                if sort.name not in fresh:
                    fresh[sort.name] = self.fresh()
                return fresh[sort.name]
            if sort.is_arrow:
                return _Arrow(convert(sort.domain), convert(sort.codomain))
            return sort

        return [convert(p) for p in signature.params], convert(signature.result)

    def resolve(self, ty: Ty) -> Ty:
        while isinstance(ty, _Meta) and ty.id in self.bound:
            ty = self.bound[ty.id]
        return ty

    def zonk(self, ty: Ty) -> Ty:
        ty = self.resolve(ty)
        if isinstance(ty, _Arrow):
            return _Arrow(self.zonk(ty.domain), self.zonk(ty.codomain))
        return ty

    def occurs(self, meta: _Meta, ty: Ty) -> bool:
        ty = self.resolve(ty)
        if isinstance(ty, _Meta):
            return ty.id == meta.id
        if isinstance(ty, _Arrow):
            return self.occurs(meta, ty.domain) or self.occurs(meta, ty.codomain)
        return False

    def unify(self, left: Ty, right: Ty, node: SNode) -> None:
        left, right = self.resolve(left), self.resolve(right)
        if isinstance(left, _Meta) and isinstance(right, _Meta) and left.id == right.id:
            return
        if isinstance(left, _Meta):
            if self.occurs(left, right):
                raise SortMismatchError("cyclic sort constraint", node.line, node.column)
            self.bound[left.id] = right
            return
        if isinstance(right, _Meta):
            self.unify(right, left, node)
            return
        if isinstance(left, _Arrow) and isinstance(right, _Arrow):
            self.unify(left.domain, right.domain, node)
            self.unify(left.codomain, right.codomain, node)
            return
        if left != right:
            raise SortMismatchError(
                f"sort mismatch: {self.show(left)} vs {self.show(right)}", node.line, node.column
            )

    def is_ground(self, ty: Ty) -> bool:
        ty = self.resolve(ty)
        if isinstance(ty, _Meta):
            return False
        if isinstance(ty, _Arrow):
            return self.is_ground(ty.domain) and self.is_ground(ty.codomain)
        return True

    def to_sort(self, ty: Ty) -> Sort:
        ty = self.resolve(ty)
        if isinstance(ty, _Arrow):
            return arrow(self.to_sort(ty.domain), self.to_sort(ty.codomain))
        if isinstance(ty, _Meta):
            raise SortMismatchError("unresolved sort")
        return ty

    def show(self, ty: Ty) -> str:
        ty = self.zonk(ty)
        if isinstance(ty, _Arrow):
            return f"({self.show(ty.domain)} -> {self.show(ty.codomain)})"
        if isinstance(ty, _Meta):
            return "?"
        return format_sort(ty)

    # -- constraint generation --------------------------------------------

    def infer(self, node: SNode) -> Ty:
        handler = getattr(self, f"_infer_{node.kind}", None)
        if handler is None:
            raise ParseError(f"unexpected {node.kind} in term", node.line, node.column)
        ty = handler(node)
        self.types[id(node)] = ty
        return ty

    def _infer_num(self, node: SNode) -> Ty:
        return self.fresh()

    def _infer_name(self, node: SNode) -> Ty:
        name = node.value
        if name in self.elab.variables:
            return self.to_ty(self.elab.variables[name])
        if name in self.local_vars:
            return self.local_vars[name]
        signature = self.symbols.ops.get(name)
        if signature is not None:
            if signature.arity:
                raise ParseError(
                    f"operator '{name}' expects {signature.arity} argument(s)", node.line, node.column
                )
            _, result = self.instantiate(signature)
            return result
        if not self.elab.pattern:
            raise UnknownSymbolError(f"unbound variable '{name}'", node.line, node.column)
        meta = self.fresh()
        self.local_vars[name] = meta
        return meta

    def _apply_signature(self, symbol: str, args, node: SNode) -> Ty:
        signature = self.symbols.ops.get(symbol)
        if signature is None:
            raise UnknownSymbolError(f"unknown operator '{symbol}'", node.line, node.column)
        if signature.arity != len(args):
            raise ParseError(
                f"operator '{symbol}' expects {signature.arity} argument(s), got {len(args)}",
                node.line,
                node.column,
            )
        params, result = self.instantiate(signature)
        for param, arg in zip(params, args):
            self.unify(self.infer(arg), param, arg)
        return result

    def _infer_op(self, node: SNode) -> Ty:
        return self._apply_signature(node.value, node.args, node)

    def _infer_coe(self, node: SNode) -> Ty:
        source = self.infer(node.args[0])
        target = self.fresh()
        self.coercions.append((source, target, node))
        return target

    def _infer_call(self, node: SNode) -> Ty:
        fn, args = node.args[0], node.args[1:]
        if self._is_op_call(fn):
            return self._apply_signature(fn.value, args, node)
        fn_ty = self.infer(fn)
        for i, arg in enumerate(args):
            result = self.fresh()
            self.unify(fn_ty, _Arrow(self.infer(arg), result), node)
            self.types[(id(node), i)] = result
            fn_ty = result
        return fn_ty

    def _is_op_call(self, fn: SNode) -> bool:
        if fn.kind != "name" or fn.value in self.elab.variables or fn.value in self.local_vars:
            return False
        signature = self.symbols.ops.get(fn.value)
        return signature is not None and signature.arity > 0

    def _infer_ascribe(self, node: SNode) -> Ty:
        ty = self.infer(node.args[0])
        self.unify(ty, self.to_ty(self.elab.sort(node.value)), node)
        return ty

    def _infer_rel(self, node: SNode) -> Ty:
        left = self.infer(node.args[0])
        right = self.infer(node.args[1])
        self.unify(left, right, node)
        return PROP

    def _infer_iff(self, node: SNode) -> Ty:
        for side in node.args:
            if side.kind != "rel":
                raise ParseError("both sides of ↔ must be relations", side.line, side.column)
            self.infer(side)
        return PROP

    # -- solving ------------------------------------------------------------

    def solve(self) -> None:
        pending = list(self.coercions)
        while True:
            progress = True
            while progress:
                progress = False
                for constraint in list(pending):
                    if self._step_coercion(constraint):
                        pending.remove(constraint)
                        progress = True
            open_meta = next((m for m in self.metas if self._is_open(m)), None)
            if open_meta is None:
                break
            logger.debug(f"defaulting {open_meta!r} to {self.elab.default_sort}")
            self.bound[open_meta.id] = self.to_ty(self.elab.default_sort)
        for source, target, node in self.coercions:
            self._check_coercion(source, target, node)

    def _is_open(self, meta: _Meta) -> bool:
        return isinstance(self.resolve(meta), _Meta)

    def _step_coercion(self, constraint) -> bool:
        source, target, node = constraint
        if self.is_ground(source) and self.is_ground(target):
            return True
        if self.is_ground(source):
            options = self.symbols.coercions_from(self.to_sort(source))
            if len(options) == 1:
                self.unify(target, self.to_ty(options[0].target), node)
                return True
        elif self.is_ground(target):
            options = self.symbols.coercions_into(self.to_sort(target))
            if len(options) == 1:
                self.unify(source, self.to_ty(options[0].source), node)
                return True
        return False

    def _check_coercion(self, source: Ty, target: Ty, node: SNode) -> None:
        source_sort, target_sort = self.to_sort(source), self.to_sort(target)
        if source_sort == target_sort:
            raise SortMismatchError(
                f"coercion from {format_sort(source_sort)} to itself", node.line, node.column
            )
        if self.symbols.coercion(source_sort, target_sort) is None:
            raise SortMismatchError(
                f"no coercion from {format_sort(source_sort)} to {format_sort(target_sort)}",
                node.line,
                node.column,
            )

    # -- term construction ----------------------------------------------------

    def build(self, node: SNode) -> Term:
        kind = node.kind
        sort = self.to_sort(self.types[id(node)])
        if kind == "num":
            return Numeral.of_int(node.value, sort)
        if kind == "name":
            if node.value in self.elab.variables or node.value in self.local_vars:
                return Var(node.value, sort)
            return Op(node.value, (), sort)
        if kind == "op":
            return Op(node.value, tuple(self.build(a) for a in node.args), sort)
        if kind == "coe":
            arg = self.build(node.args[0])
            return Coerce(arg.sort, sort, arg)
        if kind == "call":
            fn, args = node.args[0], node.args[1:]
            built = tuple(self.build(a) for a in args)
            if self._is_op_call(fn):
                return Op(fn.value, built, sort)
            result = self.build(fn)
            for i, arg in enumerate(built):
                result = Op("app", (result, arg), self.to_sort(self.types[(id(node), i)]))
            return result
        if kind == "ascribe":
            return self.build(node.args[0])
        if kind in ("rel", "iff"):
            symbol = node.value if kind == "rel" else "="
            return Rel(symbol, self.build(node.args[0]), self.build(node.args[1]))
        raise ParseError(f"unexpected {kind} in term", node.line, node.column)
