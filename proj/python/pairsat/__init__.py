"""Bounded satisfiability for a two-sorted set theory with pairs."""

from ._pairsat import (
    PairsatError,
    ParseError,
    ResourceError,
    canonical,
    check_peano,
    check_sat,
    constructs,
    encode_domino,
    encode_propositional,
    evaluate,
    expand,
    normalize,
    reduce,
    sweep,
    validate,
)

__all__ = [
    "PairsatError",
    "ParseError",
    "ResourceError",
    "canonical",
    "check_peano",
    "check_sat",
    "constructs",
    "encode_domino",
    "encode_propositional",
    "evaluate",
    "expand",
    "normalize",
    "reduce",
    "sweep",
    "validate",
]
