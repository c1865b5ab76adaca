from typing import Any, List, Optional, Sequence


class HLProverError(Exception):
    """Base exception for hl-prover"""
    pass


class ConfigurationError(HLProverError):
    """Configuration-related errors"""
    pass


class ModuleError(HLProverError):
    """Engine module errors"""
    pass


class ParseError(HLProverError):
    """Syntax error in a declaration file or term"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column or 1}: {message}"
        super().__init__(message)


class RedeclarationError(ParseError):
    """A name was declared twice"""
    pass


class UnknownSymbolError(ParseError):
    """A class, operator, sort or variable was used before being declared"""
    pass


class SortMismatchError(ParseError):
    """Ill-sorted term"""
    pass


class HierarchyError(HLProverError):
    """Invalid instance-graph operation"""
    pass


class ReassocError(HierarchyError):
    """Lemma cannot be turned into a reassociated companion"""
    pass


class ResolutionError(HLProverError):
    """Class query cannot be posed"""
    pass


class RewriteError(HLProverError):
    """Rewriting failed"""
    pass


class FuelExhaustedError(RewriteError):
    """Rewriting ran out of fuel before reaching a normal form"""

    def __init__(self, message: str, trace: Any = None, looping_rules: Sequence[str] = ()):
        self.trace = trace
        self.looping_rules: List[str] = list(looping_rules)
        super().__init__(message)


class UnsupportedSymbolError(HLProverError):
    """A tactic met a symbol outside its fragment"""

    def __init__(self, symbol: str, position: Sequence[int] = (), detail: str = ""):
        self.symbol = symbol
        self.position = tuple(position)
        message = f"unsupported symbol '{symbol}' at position {list(self.position)}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class ExponentLimitError(HLProverError):
    """Exponent above the configured limit"""
    pass


class NonLiteralError(HLProverError):
    """norm_num met a subterm that is not a literal"""

    def __init__(self, position: Sequence[int], subterm: str = ""):
        self.position = tuple(position)
        super().__init__(f"non-literal subterm {subterm} at position {list(self.position)}")


class VariableLimitError(HLProverError):
    """Too many variables for Fourier-Motzkin elimination"""
    pass


class NonIntegralError(HLProverError):
    """Integer tightening met a non-integral coefficient"""
    pass


class UndecidableError(HLProverError):
    """Proposition outside the decidable fragment"""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class TraceError(HLProverError):
    """Malformed proof trace"""
    pass
