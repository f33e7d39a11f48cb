"""Loop invariant synthesis for SyGuS-INV problems."""

from ._invgen import (
    analyze_usage,
    check,
    learn_cnf,
    parse_problem,
    solve,
    synthesize_feature,
)

__all__ = [
    "analyze_usage",
    "check",
    "learn_cnf",
    "parse_problem",
    "solve",
    "synthesize_feature",
]
