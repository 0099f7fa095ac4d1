"""Symmetric compositions, cyclic compositions and trialitarian automorphisms over finite fields."""

from ._core import (
    SCHEMA_VERSION,
    CubicCyclicExtension,
    CyclicComposition,
    FiniteField,
    SymmetricComposition,
    TrialabError,
    classify,
    descend,
    induce,
    okubo,
    para_cayley,
    parse_structure,
    run_cli,
    tau_check,
)

__all__ = [
    "SCHEMA_VERSION",
    "CubicCyclicExtension",
    "CyclicComposition",
    "FiniteField",
    "SymmetricComposition",
    "TrialabError",
    "classify",
    "descend",
    "induce",
    "okubo",
    "para_cayley",
    "parse_structure",
    "run_cli",
    "tau_check",
]
