"""
Proof trace types and JSON envelope.

The verifier lives in ``hl_prover.prooftrace.verify``; it depends on every
engine whose traces it checks, so it is not imported here.
"""

from .trace import (
    SCHEMA_VERSION,
    HypothesisEvidence,
    ProofTrace,
    RewriteStep,
    RewriteTrace,
    Terminal,
    TraceDocument,
    TraceStep,
    embed_rewrite,
    term_from_json,
    term_to_json,
)

__all__ = [
    "SCHEMA_VERSION",
    "ProofTrace",
    "TraceStep",
    "Terminal",
    "RewriteStep",
    "RewriteTrace",
    "HypothesisEvidence",
    "TraceDocument",
    "embed_rewrite",
    "term_to_json",
    "term_from_json",
]
