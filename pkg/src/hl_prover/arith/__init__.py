from .abel import AbelForm, AbelEngine, abel_normalize, abel_prove_eq
from .horner import AtomIndex, Const, Horner, HornerPoly, to_monomials, to_term
from .literals import is_literal, literal_term, literal_value
from .norm_num import FalseProp, norm_num_eval, norm_num_prove
from .normalizer import RingNormalizer
from .numerals import NumFact, NumProver, NumStep, NumTrace
from .ring import EXPONENT_LIMIT, NotEqual, RingEngine, ring_mode, ring_normalize, ring_prove_eq
from .schemas import Schema, abel_schemas, ring_schemas, schema_problem

__all__ = [
    # Normal forms
    "RingEngine",
    "AbelEngine",
    "RingNormalizer",
    "ring_normalize",
    "ring_prove_eq",
    "ring_mode",
    "abel_normalize",
    "abel_prove_eq",
    "NotEqual",
    "AbelForm",
    "HornerPoly",
    "Horner",
    "Const",
    "AtomIndex",
    "to_term",
    "to_monomials",
    "EXPONENT_LIMIT",

    # Literals
    "norm_num_eval",
    "norm_num_prove",
    "FalseProp",
    "NumTrace",
    "NumStep",
    "NumFact",
    "NumProver",
    "literal_value",
    "literal_term",
    "is_literal",

    # Schemas
    "Schema",
    "ring_schemas",
    "abel_schemas",
    "schema_problem",
]
