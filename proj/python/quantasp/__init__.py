"""Quantified answer set programs: QBF encodings, brute-force oracle and tools."""

from ._quantasp import (
    BudgetError,
    Error,
    FormatError,
    GcError,
    ParseError,
    ProgramError,
    SolverError,
    answer_sets,
    coherent,
    compile,
    features,
    gc_chain,
    normalize,
    select_backend,
    solve,
    solve_external,
    well_founded,
)

__all__ = [
    "BudgetError",
    "Error",
    "FormatError",
    "GcError",
    "ParseError",
    "ProgramError",
    "SolverError",
    "answer_sets",
    "coherent",
    "compile",
    "features",
    "gc_chain",
    "normalize",
    "select_backend",
    "solve",
    "solve_external",
    "well_founded",
]
