"""Exact toolkit for the Identity Correspondence Problem.

Free-group words, (restricted) PCP, the encoding of restricted PCP into ICP,
and exact matrix / quaternion embeddings, with bounded search oracles.
"""
from .errors import (
    DomainError,
    IcpkitError,
    IndexOutOfRange,
    MalformedPart,
    NonUnitRotor,
    NotASolution,
    ParseError,
    UnknownLetter,
)
from .freegroup import (
    EPSILON,
    Alphabet,
    GroupWord,
    LetterMap,
    SignedLetter,
    apply_map,
    concat,
    cyclic_permutations,
    invert,
    parse_word,
    reduce,
    word,
)
from .icp import (
    IcpInstance,
    PairTag,
    PartType,
    TaggedIcpInstance,
    WordPair,
    classify_part,
    decompose_by_parts,
    eval_product,
    is_cycle,
    search_identity_bounded,
    verify_icp,
    zeta,
)
from .pcp import (
    PcpInstance,
    RestrictedPcpInstance,
    solve_restricted_bounded,
    verify_pcp,
    verify_restricted,
)
from .reduction import build_icp_instance, phi, psi, sigma_collapse, translate_witness

__all__ = [
    "DomainError",
    "IcpkitError",
    "IndexOutOfRange",
    "MalformedPart",
    "NonUnitRotor",
    "NotASolution",
    "ParseError",
    "UnknownLetter",
    "EPSILON",
    "Alphabet",
    "GroupWord",
    "LetterMap",
    "SignedLetter",
    "apply_map",
    "concat",
    "cyclic_permutations",
    "invert",
    "parse_word",
    "reduce",
    "word",
    "IcpInstance",
    "PairTag",
    "PartType",
    "TaggedIcpInstance",
    "WordPair",
    "classify_part",
    "decompose_by_parts",
    "eval_product",
    "is_cycle",
    "search_identity_bounded",
    "verify_icp",
    "zeta",
    "PcpInstance",
    "RestrictedPcpInstance",
    "solve_restricted_bounded",
    "verify_pcp",
    "verify_restricted",
    "build_icp_instance",
    "phi",
    "psi",
    "sigma_collapse",
    "translate_witness",
]

__version__ = "0.1.0"
