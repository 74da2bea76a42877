"""Scalar functions of the Clebsch coordinates."""

from .canon import (
    NOT_POLYNOMIAL,
    Poly,
    RForm,
    exact_zero,
    normalize,
    poly_normalize,
    simplify,
    to_expr,
)
from .expr import (
    Add,
    Const,
    Div,
    DomainError,
    Expr,
    Func,
    Mul,
    Neg,
    Pow,
    Sub,
    Sym,
    as_expr,
    const,
    cos,
    diff,
    evaluate,
    evaluate_many,
    fd_diff,
    max_symbol,
    sin,
    sqrt,
    sym,
    symbols,
    to_text,
)
from .parse import ParseError, SymbolOutOfRange, parse_expr
from .zero import ZeroStatus, ZeroVerdict, is_zero, sample_points

__all__ = [
    "NOT_POLYNOMIAL",
    "Poly",
    "RForm",
    "exact_zero",
    "normalize",
    "poly_normalize",
    "simplify",
    "to_expr",
    "Add",
    "Const",
    "Div",
    "DomainError",
    "Expr",
    "Func",
    "Mul",
    "Neg",
    "Pow",
    "Sub",
    "Sym",
    "as_expr",
    "const",
    "cos",
    "diff",
    "evaluate",
    "evaluate_many",
    "fd_diff",
    "max_symbol",
    "sin",
    "sqrt",
    "sym",
    "symbols",
    "to_text",
    "ParseError",
    "SymbolOutOfRange",
    "parse_expr",
    "ZeroStatus",
    "ZeroVerdict",
    "is_zero",
    "sample_points",
]
