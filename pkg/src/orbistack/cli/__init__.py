"""Command-line front end."""

from orbistack.cli.expr import (
    BinOp,
    Expr,
    Int,
    Neg,
    Sqrt,
    evaluate,
    parse_expr,
    parse_matrix,
    parse_quadratic,
)
from orbistack.cli.main import dispatch, main
from orbistack.cli.report import SCHEMA, RunReport

__all__ = [
    "BinOp", "Expr", "Int", "Neg", "Sqrt", "evaluate", "parse_expr", "parse_matrix",
    "parse_quadratic", "dispatch", "main", "SCHEMA", "RunReport",
]
