"""
Declaration linter.

Checks are advisory: every finding is a warning except ``simp_loop_risk``,
which is an error in strict mode.
"""

import logging
import re
from typing import Iterable, List, Optional, Sequence, Set

from pydantic import BaseModel

from ..hierarchy import Env
from ..rewriter import loop_risk
from ..syntax import AnyDeclaration, ClassDecl, Goal, InstanceRule, Lemma, RewriteRule, RuleKind
from ..syntax.terms import free_vars
from .reports import Diagnostic, Severity

logger = logging.getLogger(__name__)

UNUSED_HYPOTHESIS = "unused_hypothesis"
MALFORMED_NAME = "malformed_name"
MISSING_DOC = "missing_doc"
SIMP_LOOP_RISK = "simp_loop_risk"

CHECKS = (UNUSED_HYPOTHESIS, MALFORMED_NAME, MISSING_DOC, SIMP_LOOP_RISK)

NAME_PATTERN = re.compile(r"[a-z][a-z0-9_]*")

NAMED_KINDS = (ClassDecl, InstanceRule, RewriteRule, Lemma, Goal)
DOCUMENTED_KINDS = (ClassDecl, RewriteRule, Lemma)


class LintFinding(BaseModel):
    declaration: str
    check: str
    message: str
    line: Optional[int] = None
    column: Optional[int] = None

    def to_diagnostic(self, strict: bool = False) -> Diagnostic:
        error = strict and self.check == SIMP_LOOP_RISK
        return Diagnostic(
            severity=Severity.ERROR if error else Severity.WARNING,
            code=self.check,
            declaration=self.declaration,
            message=self.message,
            line=self.line,
            column=self.column,
        )


def _finding(decl: AnyDeclaration, check: str, message: str) -> LintFinding:
    position = decl.position
    return LintFinding(
        declaration=decl.name,
        check=check,
        message=message,
        line=position.line if position else None,
        column=position.column if position else None,
    )


def malformed_name(name: str) -> Optional[str]:
    if not NAME_PATTERN.fullmatch(name):
        return "not snake_case"
    if "__" in name:
        return "doubled underscore"
    if name.endswith("_"):
        return "trailing underscore"
    return None


def unused_hypotheses(lemma: Lemma) -> List[str]:
    """
    Hypotheses and binders not linked to the statement.

    A hypothesis is linked when it shares a free variable with the statement
    or with a linked hypothesis.
    """
    reached: Set[str] = set(free_vars(lemma.statement))
    pending = list(lemma.hypotheses)
    changed = True
    while changed:
        changed = False
        for hypothesis in list(pending):
            names = set(free_vars(hypothesis.statement))
            if names & reached:
                reached |= names
                pending.remove(hypothesis)
                changed = True
    unused = [h.name for h in pending]
    unused += [b.name for b in lemma.binders if b.name not in reached]
    return unused


def _check_declaration(decl: AnyDeclaration, checks: Set[str]) -> Iterable[LintFinding]:
    if MALFORMED_NAME in checks and isinstance(decl, NAMED_KINDS):
        problem = malformed_name(decl.name)
        if problem:
            yield _finding(decl, MALFORMED_NAME, f"name '{decl.name}': {problem}")
    if MISSING_DOC in checks and isinstance(decl, DOCUMENTED_KINDS):
        if not decl.doc and not decl.has_attribute("private"):
            yield _finding(
                decl,
                MISSING_DOC,
                "no /-- -/ doc string (simplified check: any doc string counts)",
            )
    if UNUSED_HYPOTHESIS in checks and isinstance(decl, Lemma):
        for name in unused_hypotheses(decl):
            yield _finding(decl, UNUSED_HYPOTHESIS, f"'{name}' is not used by the statement")
    if SIMP_LOOP_RISK in checks and isinstance(decl, RewriteRule) and decl.kind == RuleKind.SIMP:
        if loop_risk(decl):
            yield _finding(decl, SIMP_LOOP_RISK, "left-hand side matches a subterm of the right-hand side")


def lint(env: Env, checks: Optional[Sequence[str]] = None) -> List[LintFinding]:
    """Findings for every declaration of ``env``, in declaration order"""
    enabled = set(checks or CHECKS)
    findings: List[LintFinding] = []
    for decl in env.declarations:
        for finding in _check_declaration(decl, enabled):
            logger.info(f"lint: {finding.declaration}: {finding.check}: {finding.message}")
            findings.append(finding)
    return findings
