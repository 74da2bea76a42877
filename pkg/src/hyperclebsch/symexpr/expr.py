"""Expression trees over the Clebsch coordinates ``f1, f2, ...``.

Nodes are immutable and hashable.  The node classes themselves build trees
verbatim (the parser relies on that); the arithmetic operators and the
helpers :func:`const`, :func:`sin`, :func:`cos` and :func:`sqrt` fold
constants and drop neutral elements so that machine-built trees stay small.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

import numpy as np

__all__ = [
    "DomainError",
    "Expr",
    "Const",
    "Sym",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "Neg",
    "Func",
    "const",
    "sym",
    "sin",
    "cos",
    "sqrt",
    "as_expr",
    "diff",
    "evaluate",
    "evaluate_many",
    "fd_diff",
    "symbols",
    "to_text",
]

FUNCTIONS = ("sin", "cos", "sqrt")


class DomainError(ArithmeticError):
    """Raised when an expression is evaluated outside its domain."""

    def __init__(self, message: str, subtree: "Expr"):
        super().__init__(f"{message}: {to_text(subtree)}")
        self.subtree = subtree


class Expr:
    __slots__ = ("_hash",)
    args: tuple = ()
    precedence = 5

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((type(self).__name__, self._key()))
        return h

    def _key(self):
        return self.args

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self._key()))})"

    def __str__(self):
        return to_text(self)

    # arithmetic builds simplified trees
    def __add__(self, other):
        return _add(self, as_expr(other))

    def __radd__(self, other):
        return _add(as_expr(other), self)

    def __sub__(self, other):
        return _sub(self, as_expr(other))

    def __rsub__(self, other):
        return _sub(as_expr(other), self)

    def __mul__(self, other):
        return _mul(self, as_expr(other))

    def __rmul__(self, other):
        return _mul(as_expr(other), self)

    def __truediv__(self, other):
        return _div(self, as_expr(other))

    def __rtruediv__(self, other):
        return _div(as_expr(other), self)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        return _pow(self, n)

    def __neg__(self):
        return _neg(self)

    def __pos__(self):
        return self


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        self._hash = None
        self.value = Fraction(value)

    def _key(self):
        return (self.value,)


class Sym(Expr):
    """The coordinate function ``f{index}`` (1-based)."""

    __slots__ = ("index",)

    def __init__(self, index: int):
        self._hash = None
        if index < 1:
            raise ValueError("coordinate indices start at 1")
        self.index = int(index)

    def _key(self):
        return (self.index,)


class _Binary(Expr):
    __slots__ = ("args",)
    symbol = "?"

    def __init__(self, left: Expr, right: Expr):
        self._hash = None
        self.args = (left, right)

    @property
    def left(self):
        return self.args[0]

    @property
    def right(self):
        return self.args[1]


class Add(_Binary):
    __slots__ = ()
    symbol = "+"
    precedence = 1


class Sub(_Binary):
    __slots__ = ()
    symbol = "-"
    precedence = 1


class Mul(_Binary):
    __slots__ = ()
    symbol = "*"
    precedence = 2


class Div(_Binary):
    __slots__ = ()
    symbol = "/"
    precedence = 2


class Neg(Expr):
    __slots__ = ("args",)
    precedence = 3

    def __init__(self, arg: Expr):
        self._hash = None
        self.args = (arg,)

    @property
    def arg(self):
        return self.args[0]


class Pow(Expr):
    __slots__ = ("args", "exponent")
    precedence = 4

    def __init__(self, base: Expr, exponent: int):
        self._hash = None
        self.args = (base,)
        self.exponent = int(exponent)

    @property
    def base(self):
        return self.args[0]

    def _key(self):
        return (self.args[0], self.exponent)


class Func(Expr):
    __slots__ = ("args", "name")

    def __init__(self, name: str, arg: Expr):
        if name not in FUNCTIONS:
            raise ValueError(f"unknown function {name!r}")
        self._hash = None
        self.name = name
        self.args = (arg,)

    @property
    def arg(self):
        return self.args[0]

    def _key(self):
        return (self.name, self.args[0])


ZERO = Const(0)
ONE = Const(1)


def const(value) -> Const:
    return Const(value)


def sym(index: int) -> Sym:
    return Sym(index)


def symbols(count: int) -> list[Sym]:
    """``[f1, ..., f{count}]``."""
    return [Sym(i) for i in range(1, count + 1)]


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (Rational, int)):
        return Const(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError("non-finite constant")
        return Const(Fraction(value))
    raise TypeError(f"cannot convert {type(value).__name__} to an expression")


def _is_const(e, value=None) -> bool:
    if not isinstance(e, Const):
        return False
    return value is None or e.value == value


def _add(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if isinstance(b, Neg):
        return _sub(a, b.arg)
    if isinstance(b, Const) and b.value < 0:
        return Sub(a, Const(-b.value))
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return _neg(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if isinstance(b, Neg):
        return _add(a, b.arg)
    if isinstance(b, Const) and b.value < 0:
        return Add(a, Const(-b.value))
    return Sub(a, b)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is_const(a, -1):
        return _neg(b)
    if _is_const(b, -1):
        return _neg(a)
    if isinstance(a, Neg) and isinstance(b, Neg):
        return _mul(a.arg, b.arg)
    if isinstance(a, Neg):
        return _neg(_mul(a.arg, b))
    if isinstance(b, Neg):
        return _neg(_mul(a, b.arg))
    if isinstance(b, Const) and not isinstance(a, Const):
        a, b = b, a
    if isinstance(a, Const) and a.value < 0:
        return _neg(_mul(Const(-a.value), b))
    return Mul(a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 1):
        return a
    if _is_const(a, 0) and not _is_const(b, 0):
        return ZERO
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0:
        return Const(a.value / b.value)
    if _is_const(b, -1):
        return _neg(a)
    if isinstance(a, Neg):
        return _neg(_div(a.arg, b))
    return Div(a, b)


def _pow(a: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return a
    if isinstance(a, Const) and (a.value != 0 or n > 0):
        return Const(a.value**n)
    if n < 0:
        return _div(ONE, _pow(a, -n))
    if isinstance(a, Pow):
        return Pow(a.base, a.exponent * n)
    return Pow(a, n)


def _neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    if isinstance(a, Sub):
        return Sub(a.right, a.left)
    return Neg(a)


def sin(x) -> Expr:
    x = as_expr(x)
    if _is_const(x, 0):
        return ZERO
    if isinstance(x, Neg):
        return _neg(Func("sin", x.arg))
    return Func("sin", x)


def cos(x) -> Expr:
    x = as_expr(x)
    if _is_const(x, 0):
        return ONE
    if isinstance(x, Neg):
        return Func("cos", x.arg)
    return Func("cos", x)


def sqrt(x) -> Expr:
    x = as_expr(x)
    if isinstance(x, Const) and x.value >= 0:
        num, den = x.value.numerator, x.value.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Const(Fraction(rn, rd))
    return Func("sqrt", x)


# ---------------------------------------------------------------- printing


def _const_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _prec(e: Expr) -> int:
    if isinstance(e, Const):
        if e.value.denominator != 1:
            return 2
        return 3 if e.value < 0 else 5
    return e.precedence


def _wrap(e: Expr, parenthesize: bool) -> str:
    text = to_text(e)
    return f"({text})" if parenthesize else text


@lru_cache(maxsize=65536)
def to_text(e: Expr) -> str:
    """Render in the input grammar; ``parse_expr(to_text(e))`` rebuilds ``e``."""
    if isinstance(e, Const):
        return _const_text(e.value)
    if isinstance(e, Sym):
        return f"f{e.index}"
    if isinstance(e, Func):
        return f"{e.name}({to_text(e.arg)})"
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _prec(e.base) < 5)}^{e.exponent}"
    if isinstance(e, Neg):
        return f"-{_wrap(e.arg, _prec(e.arg) < 3)}"
    if isinstance(e, _Binary):
        p = e.precedence
        left = _wrap(e.left, _prec(e.left) < p)
        right = _wrap(e.right, _prec(e.right) <= p)
        if p == 1:
            return f"{left} {e.symbol} {right}"
        return f"{left}{e.symbol}{right}"
    raise TypeError(type(e))


# -------------------------------------------------------------- evaluation


def evaluate(e: Expr, point: Sequence[float]) -> float:
    """Evaluate ``e`` in binary64 with ``point[i-1]`` assigned to ``f_i``."""
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Sym):
        try:
            return float(point[e.index - 1])
        except IndexError:
            raise DomainError("coordinate outside the point", e) from None
    if isinstance(e, Add):
        return evaluate(e.left, point) + evaluate(e.right, point)
    if isinstance(e, Sub):
        return evaluate(e.left, point) - evaluate(e.right, point)
    if isinstance(e, Mul):
        return evaluate(e.left, point) * evaluate(e.right, point)
    if isinstance(e, Div):
        den = evaluate(e.right, point)
        if den == 0.0:
            raise DomainError("division by zero", e)
        return evaluate(e.left, point) / den
    if isinstance(e, Neg):
        return -evaluate(e.arg, point)
    if isinstance(e, Pow):
        base = evaluate(e.base, point)
        if base == 0.0 and e.exponent < 0:
            raise DomainError("division by zero", e)
        try:
            return base**e.exponent
        except OverflowError:
            raise DomainError("overflow", e) from None
    if isinstance(e, Func):
        x = evaluate(e.arg, point)
        if e.name == "sin":
            return math.sin(x)
        if e.name == "cos":
            return math.cos(x)
        if x < 0.0:
            raise DomainError("square root of a negative number", e)
        return math.sqrt(x)
    raise TypeError(type(e))


def evaluate_many(exprs: Sequence[Expr], points) -> np.ndarray:
    """Evaluate several expressions at many points at once.

    Returns an array of shape ``(len(exprs), len(points))``.  Shared
    subtrees are computed once.  Entries outside the domain (division by
    zero, square root of a negative number, overflow) come back as ``nan``.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2:
        raise ValueError("points must be a 2-d array")
    cols = points.T
    memo: dict = {}

    def ev(e: Expr) -> np.ndarray:
        hit = memo.get(e)
        if hit is not None:
            return hit
        if isinstance(e, Const):
            out = np.full(len(points), float(e.value))
        elif isinstance(e, Sym):
            out = cols[e.index - 1] if e.index <= len(cols) else np.full(len(points), np.nan)
        elif isinstance(e, Neg):
            out = -ev(e.arg)
        elif isinstance(e, Func):
            x = ev(e.arg)
            if e.name == "sqrt":
                out = np.sqrt(np.where(x < 0.0, np.nan, x))
            else:
                out = np.sin(x) if e.name == "sin" else np.cos(x)
        elif isinstance(e, Pow):
            base = ev(e.base)
            if e.exponent < 0:
                base = np.where(base == 0.0, np.nan, base)
            out = base ** float(e.exponent)
        else:
            a, b = ev(e.args[0]), ev(e.args[1])
            if isinstance(e, Add):
                out = a + b
            elif isinstance(e, Sub):
                out = a - b
            elif isinstance(e, Mul):
                out = a * b
            else:
                out = a / np.where(b == 0.0, np.nan, b)
        memo[e] = out
        return out

    with np.errstate(all="ignore"):
        rows = [ev(e) for e in exprs]
        out = np.array(rows).reshape(len(exprs), len(points))
    out[~np.isfinite(out)] = np.nan
    return out


# ---------------------------------------------------------- differentiation


@lru_cache(maxsize=65536)
def diff(e: Expr, i: int) -> Expr:
    """Exact partial derivative with respect to ``f_i``."""
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Sym):
        return ONE if e.index == i else ZERO
    if isinstance(e, Add):
        return diff(e.left, i) + diff(e.right, i)
    if isinstance(e, Sub):
        return diff(e.left, i) - diff(e.right, i)
    if isinstance(e, Neg):
        return -diff(e.arg, i)
    if isinstance(e, Mul):
        a, b = e.args
        return diff(a, i) * b + a * diff(b, i)
    if isinstance(e, Div):
        a, b = e.args
        da, db = diff(a, i), diff(b, i)
        if _is_const(db, 0):
            return da / b
        return (da * b - a * db) / b**2
    if isinstance(e, Pow):
        n = e.exponent
        return Const(n) * _pow(e.base, n - 1) * diff(e.base, i)
    if isinstance(e, Func):
        inner = diff(e.arg, i)
        if _is_const(inner, 0):
            return ZERO
        if e.name == "sin":
            return cos(e.arg) * inner
        if e.name == "cos":
            return -(sin(e.arg) * inner)
        return inner / (Const(2) * e)
    raise TypeError(type(e))


def fd_diff(e: Expr, i: int, point: Sequence[float], h: float = 1e-5) -> float:
    """Central difference of ``e`` along ``f_i`` with step ``h``."""
    if h <= 0:
        raise ValueError("step must be positive")
    if isinstance(e, Const):
        return 0.0
    plus = list(point)
    minus = list(point)
    plus[i - 1] += h
    minus[i - 1] -= h
    return (evaluate(e, plus) - evaluate(e, minus)) / (2 * h)


def max_symbol(e: Expr) -> int:
    """Largest coordinate index occurring in ``e`` (0 for constants)."""
    if isinstance(e, Sym):
        return e.index
    if isinstance(e, Const):
        return 0
    return max(max_symbol(a) for a in e.args)
