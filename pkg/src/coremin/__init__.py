"""Redundancy elimination and minimal-core extraction for finite-domain
constraint knowledge bases, with a benchmark harness and a text format."""

from .bench import (
    Algorithm,
    BenchConfig,
    BenchRecord,
    CSV_HEADER,
    SolveMeasurement,
    derive_seed,
    gen_variant,
    redundancy_rate,
    run_bench,
    solve_time_comparison,
    theoretical_tp_bounds,
    write_csv,
)
from .cores import (
    CoreResult,
    InconsistentKBError,
    SizeLimitError,
    UnknownLabelError,
    cored,
    corediag,
    enumerate_minimal_cores,
    is_minimal_core,
    is_redundant,
    sequential,
)
from .kbformat import (
    ErrorKind,
    KBParseError,
    ParseError,
    format_expr,
    parse_constraints,
    parse_kb,
    serialize_kb,
)
from .model import (
    And,
    Assignment,
    Atom,
    CmpOp,
    Constraint,
    Expr,
    Implies,
    KnowledgeBase,
    Not,
    Or,
    UnboundVariableError,
    Variable,
    evaluate,
    free_vars,
    is_complete,
    is_valid_configuration,
    negate_kb,
)
from .solve import (
    BudgetExceededError,
    CheckStats,
    ConsistencyProblem,
    find_solution,
    is_consistent,
)

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "And",
    "Assignment",
    "Atom",
    "BenchConfig",
    "BenchRecord",
    "BudgetExceededError",
    "CSV_HEADER",
    "CheckStats",
    "CmpOp",
    "ConsistencyProblem",
    "Constraint",
    "CoreResult",
    "ErrorKind",
    "Expr",
    "Implies",
    "InconsistentKBError",
    "KBParseError",
    "KnowledgeBase",
    "Not",
    "Or",
    "ParseError",
    "SizeLimitError",
    "SolveMeasurement",
    "UnboundVariableError",
    "UnknownLabelError",
    "Variable",
    "cored",
    "corediag",
    "derive_seed",
    "enumerate_minimal_cores",
    "evaluate",
    "find_solution",
    "format_expr",
    "free_vars",
    "gen_variant",
    "is_complete",
    "is_consistent",
    "is_minimal_core",
    "is_redundant",
    "is_valid_configuration",
    "negate_kb",
    "parse_constraints",
    "parse_kb",
    "redundancy_rate",
    "run_bench",
    "sequential",
    "serialize_kb",
    "solve_time_comparison",
    "theoretical_tp_bounds",
    "write_csv",
]
