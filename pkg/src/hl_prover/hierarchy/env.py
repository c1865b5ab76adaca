"""
Environments: the sealed collection of classes, instances, rewrite rules,
lemmas and goals of a source file.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from ..core.exceptions import HierarchyError
from ..syntax import (
    AnyDeclaration,
    ClassDecl,
    DeclarationReader,
    Goal,
    InstanceRule,
    Lemma,
    RewriteRule,
    RuleKind,
    SymbolTable,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Env:
    """Immutable, shareable environment produced by ``EnvBuilder.seal``"""
    symbols: SymbolTable
    declarations: Tuple[AnyDeclaration, ...]
    classes: Mapping[str, ClassDecl]
    instances: Tuple[InstanceRule, ...]
    rewrite_rules: Tuple[RewriteRule, ...]
    lemmas: Tuple[Lemma, ...]
    goals: Tuple[Goal, ...]
    _rules_by_head: Mapping[str, Tuple[InstanceRule, ...]] = field(repr=False)
    _instance_index: Mapping[str, int] = field(repr=False)
    _class_index: Mapping[str, int] = field(repr=False)
    _by_name: Mapping[str, AnyDeclaration] = field(repr=False)

    def rules_for(self, cls: str) -> Tuple[InstanceRule, ...]:
        """Instances with head class ``cls`` in search order: priority ascending, newest first"""
        return self._rules_by_head.get(cls, ())

    def instance(self, name: str) -> Optional[InstanceRule]:
        decl = self._by_name.get(name)
        return decl if isinstance(decl, InstanceRule) else None

    def rewrite_rule(self, name: str) -> Optional[RewriteRule]:
        decl = self._by_name.get(name)
        return decl if isinstance(decl, RewriteRule) else None

    def lemma(self, name: str) -> Optional[Lemma]:
        decl = self._by_name.get(name)
        return decl if isinstance(decl, Lemma) else None

    def declaration(self, name: str) -> Optional[AnyDeclaration]:
        return self._by_name.get(name)

    def instance_index(self, name: str) -> int:
        return self._instance_index[name]

    def class_index(self, name: str) -> int:
        return self._class_index[name]

    def rules_of_kind(self, *kinds: RuleKind) -> Tuple[RewriteRule, ...]:
        return tuple(r for r in self.rewrite_rules if r.kind in kinds)

    @property
    def facts(self) -> Tuple[InstanceRule, ...]:
        return tuple(r for r in self.instances if r.is_fact)


class EnvBuilder:
    """
    Collects declarations, enforcing name uniqueness and referential
    integrity, and expands the ``pi_instance`` and ``reassoc`` attributes.
    """

    def __init__(self, symbols: Optional[SymbolTable] = None):
        self._reader = DeclarationReader(symbols)
        self._declarations: List[AnyDeclaration] = []
        self._sealed = False

    @classmethod
    def from_env(cls, env: Env) -> "EnvBuilder":
        builder = cls()
        builder.add_all(env.declarations)
        return builder

    @property
    def symbols(self) -> SymbolTable:
        return self._reader.symbols

    @property
    def declarations(self) -> Tuple[AnyDeclaration, ...]:
        return tuple(self._declarations)

    def add_source(self, source: str) -> "EnvBuilder":
        for decl in self._reader.elaborate_all(source):
            self.add(decl)
        return self

    def add_all(self, declarations: Iterable[AnyDeclaration]) -> "EnvBuilder":
        for decl in declarations:
            self.add(decl, expand=False)
        return self

    def add(self, decl: AnyDeclaration, expand: bool = True) -> "EnvBuilder":
        """
        Add one declaration.

        With ``expand`` the derived declarations of ``[pi_instance]`` and
        ``[reassoc]`` are added right after it; ``add_all`` replays already
        expanded declaration lists and so does not expand again.
        """
        if self._sealed:
            raise HierarchyError("environment already sealed")
        if isinstance(decl, InstanceRule):
            self._check_instance(decl)
        self._reader.declare(decl)
        self._declarations.append(decl)
        if expand:
            for derived in self._derived(decl):
                logger.debug(f"adding derived declaration {derived.name}")
                self._reader.declare(derived)
                self._declarations.append(derived)
        return self

    def _check_instance(self, rule: InstanceRule) -> None:
        for atom in (rule.head,) + rule.body:
            params = self.symbols.classes.get(atom.cls)
            if params is None:
                raise HierarchyError(f"instance '{rule.name}' refers to unknown class '{atom.cls}'")
            if len(params) != len(atom.args):
                raise HierarchyError(f"instance '{rule.name}': class '{atom.cls}' expects {len(params)} argument(s)")
        head_vars = set(rule.head.variables())
        for atom in rule.body:
            missing = [v for v in atom.variables() if v not in head_vars]
            if missing:
                raise HierarchyError(
                    f"instance '{rule.name}': body variable(s) {', '.join(missing)} not bound by the head"
                )

    def _derived(self, decl: AnyDeclaration) -> List[AnyDeclaration]:
        from .derive import pointwise_rules, reassoc

        derived: List[AnyDeclaration] = []
        if isinstance(decl, InstanceRule) and decl.has_attribute("pi_instance"):
            derived.extend(pointwise_rules(self._snapshot(), decl))
        if isinstance(decl, (Lemma, RewriteRule)) and decl.has_attribute("reassoc"):
            derived.append(reassoc(decl, self.symbols))
        return derived

    def _snapshot(self) -> Env:
        return _build_env(self.symbols.copy(), tuple(self._declarations))

    def seal(self) -> Env:
        self._sealed = True
        return _build_env(self.symbols, tuple(self._declarations))


def _build_env(symbols: SymbolTable, declarations: Tuple[AnyDeclaration, ...]) -> Env:
    classes: Dict[str, ClassDecl] = {}
    instances: List[InstanceRule] = []
    rewrite_rules: List[RewriteRule] = []
    lemmas: List[Lemma] = []
    goals: List[Goal] = []
    by_name: Dict[str, AnyDeclaration] = {}
    for decl in declarations:
        if isinstance(decl, ClassDecl):
            classes[decl.name] = decl
        elif isinstance(decl, InstanceRule):
            instances.append(decl)
        elif isinstance(decl, RewriteRule):
            rewrite_rules.append(decl)
        elif isinstance(decl, Lemma):
            lemmas.append(decl)
        elif isinstance(decl, Goal):
            goals.append(decl)
        else:
            continue
        by_name[decl.name] = decl

    instance_index = {rule.name: i for i, rule in enumerate(instances)}
    grouped: Dict[str, List[InstanceRule]] = {}
    for rule in instances:
        grouped.setdefault(rule.head.cls, []).append(rule)
    rules_by_head = {
        cls: tuple(sorted(rules, key=lambda r: (r.priority, -instance_index[r.name])))
        for cls, rules in grouped.items()
    }
    return Env(
        symbols=symbols,
        declarations=declarations,
        classes=MappingProxyType(classes),
        instances=tuple(instances),
        rewrite_rules=tuple(rewrite_rules),
        lemmas=tuple(lemmas),
        goals=tuple(goals),
        _rules_by_head=MappingProxyType(rules_by_head),
        _instance_index=MappingProxyType(instance_index),
        _class_index=MappingProxyType({name: i for i, name in enumerate(classes)}),
        _by_name=MappingProxyType(by_name),
    )


def load_env(source: str) -> Env:
    """Parse ``.hl`` source text and seal it"""
    return EnvBuilder().add_source(source).seal()


def load_env_file(path: Union[str, Path]) -> Env:
    path = Path(path)
    logger.debug(f"loading {path}")
    return load_env(path.read_text(encoding="utf-8"))


def empty_env() -> Env:
    return EnvBuilder().seal()
