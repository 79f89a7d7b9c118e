"""dfalab: graph-coloring reductions, exact solvers, and witness
constructions for consistent-DFA identification over prefix-closed samples."""

from .automata import (
    Alphabet,
    Dfa,
    DfaSample,
    LabeledString,
    MachineSample,
    MealyMachine,
    MooreMachine,
    PartialDfa,
    PrefixCompleteness,
    SampleError,
    consistency_violations,
    dfa_sample_to_machine_sample,
    is_consistent,
    machine_sample_to_dfa_sample,
    prefix_completeness,
    prefix_tree_acceptor,
)
from .graphs import (
    Coloring,
    DimacsError,
    Graph,
    chromatic_number,
    emit_dimacs,
    is_proper_coloring,
    parse_dimacs,
)
from .reductions import (
    Encoding,
    ReductionParams,
    binary_sample,
    default_params,
    make_encoding,
    param_warnings,
    single_run,
    single_string,
    zhang_sample,
)
from .solver import (
    BoundExceededError,
    SolveOutcome,
    SolveRequest,
    SolveStatus,
    SolveTimeoutError,
    brute_force_min,
    exists_consistent,
    min_consistent,
    rpni,
)
from .witnesses import (
    ChainAnalysis,
    ExtractionError,
    InconsistentDfaError,
    RatioReport,
    binary_dfa_from_coloring,
    coloring_from_binary_dfa,
    coloring_from_single_dfa,
    coloring_from_zhang_dfa,
    ratio_report,
    single_dfa_from_coloring,
    two_chain_dfa,
    zhang_dfa_from_coloring,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BoundExceededError",
    "ChainAnalysis",
    "Coloring",
    "Dfa",
    "DfaSample",
    "DimacsError",
    "Encoding",
    "ExtractionError",
    "Graph",
    "InconsistentDfaError",
    "LabeledString",
    "MachineSample",
    "MealyMachine",
    "MooreMachine",
    "PartialDfa",
    "PrefixCompleteness",
    "RatioReport",
    "ReductionParams",
    "SampleError",
    "SolveOutcome",
    "SolveRequest",
    "SolveStatus",
    "SolveTimeoutError",
    "binary_dfa_from_coloring",
    "binary_sample",
    "brute_force_min",
    "chromatic_number",
    "coloring_from_binary_dfa",
    "coloring_from_single_dfa",
    "coloring_from_zhang_dfa",
    "consistency_violations",
    "default_params",
    "dfa_sample_to_machine_sample",
    "emit_dimacs",
    "exists_consistent",
    "is_consistent",
    "is_proper_coloring",
    "machine_sample_to_dfa_sample",
    "make_encoding",
    "min_consistent",
    "param_warnings",
    "parse_dimacs",
    "prefix_completeness",
    "prefix_tree_acceptor",
    "ratio_report",
    "rpni",
    "single_dfa_from_coloring",
    "single_run",
    "single_string",
    "two_chain_dfa",
    "zhang_dfa_from_coloring",
    "zhang_sample",
]
