"""Rational safety games solved by learning regular winning sets."""

from ._core import (
    CSV_HEADER,
    Dfa,
    Error,
    Game,
    InfiniteBranching,
    InvariantViolation,
    ParameterError,
    ParseError,
    accepts,
    benchmark_families,
    dfa_to_dot,
    generate_benchmark,
    load_game,
    parse_dfa,
    parse_game,
    query,
    run_cli,
    serialize_dfa,
    solve,
    verify,
)

__all__ = [
    "CSV_HEADER",
    "Dfa",
    "Error",
    "Game",
    "InfiniteBranching",
    "InvariantViolation",
    "ParameterError",
    "ParseError",
    "accepts",
    "benchmark_families",
    "dfa_to_dot",
    "generate_benchmark",
    "load_game",
    "parse_dfa",
    "parse_game",
    "query",
    "run_cli",
    "serialize_dfa",
    "solve",
    "verify",
]
