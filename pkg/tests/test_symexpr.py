from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperclebsch.symexpr import (
    NOT_POLYNOMIAL,
    Add,
    Const,
    DomainError,
    Func,
    Mul,
    ParseError,
    Pow,
    SymbolOutOfRange,
    ZeroStatus,
    cos,
    diff,
    evaluate,
    evaluate_many,
    exact_zero,
    fd_diff,
    is_zero,
    parse_expr,
    poly_normalize,
    sample_points,
    sin,
    sqrt,
    sym,
    to_text,
)

M = 2  # five coordinates
f1, f2, f3, f4, f5 = (sym(i) for i in range(1, 6))


# -------------------------------------------------------------------- parse


def test_parse_product_plus_constant():
    e = parse_expr("f1*f3 + 2", 3)
    assert isinstance(e, Add) and isinstance(e.left, Mul) and e.right == Const(2)


def test_parse_power_of_sine():
    e = parse_expr("sin(f2)^2", 1)
    assert isinstance(e, Pow) and isinstance(e.base, Func)


def test_parse_precedence_and_associativity():
    assert evaluate(parse_expr("2 + 3*4^2", 1), [0, 0, 0]) == 50
    assert evaluate(parse_expr("8 - 3 - 2", 1), [0, 0, 0]) == 3
    assert evaluate(parse_expr("8 / 4 / 2", 1), [0, 0, 0]) == 1
    assert evaluate(parse_expr("-f1^2", 1), [3, 0, 0]) == -9


def test_parse_decimal_is_exact_rational():
    assert parse_expr("0.25", 1) == Const(Fraction(1, 4))


def test_symbol_out_of_range():
    with pytest.raises(SymbolOutOfRange):
        parse_expr("f9", 3)


@pytest.mark.parametrize("text", ["f1 +", "(f1", "f1 f2", "tan(f1)", "f1^f2", "2 $ 3", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_expr(text, 3)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_expr("f1 + )", 1)
    assert "position 5" in str(info.value)


# --------------------------------------------------------------- evaluation


def test_eval_examples():
    assert evaluate(f1 + 2, [3, 0, 0]) == 5
    x = parse_expr("sin(f2)^2 + cos(f2)^2", 1)
    for p in sample_points(1, 3, 20):
        assert abs(evaluate(x, p) - 1) < 1e-15


@pytest.mark.parametrize("text,point", [("f1/f2", [1, 0, 0]), ("sqrt(f1)", [-1, 0, 0])])
def test_eval_domain_error_carries_subtree(text, point):
    e = parse_expr(text, 1)
    with pytest.raises(DomainError) as info:
        evaluate(e, point)
    assert info.value.subtree == e


def test_evaluate_many_matches_scalar_eval():
    exprs = [f1 * f2 - sin(f3), sqrt(f1 * f1 + 1) / (f2 * f2 + 2), f1 / f2]
    pts = sample_points(1, 4, 30)
    pts[0, 1] = 0.0
    out = evaluate_many(exprs, pts)
    assert out.shape == (3, 30)
    assert math.isnan(out[2, 0])
    for k, e in enumerate(exprs):
        for j in range(1, 30):
            assert out[k, j] == pytest.approx(evaluate(e, pts[j]), abs=1e-14)


# --------------------------------------------------------------- derivatives


def test_diff_examples():
    assert diff(f1, 1) == Const(1)
    assert diff(f1 * f3, 3) == f1
    d = diff(sqrt(f2), 2)
    assert to_text(d) == "1/(2*sqrt(f2))"
    assert evaluate(d, [0, 4, 0]) == pytest.approx(0.25)
    assert fd_diff(sqrt(f2), 2, [0, 4, 0]) == pytest.approx(0.25, abs=1e-9)


def test_fd_examples():
    assert abs(fd_diff(f1 * f1, 1, [3, 0, 0], 1e-5) - 6) <= 1e-6
    assert fd_diff(Const(7), 2, [1, 2, 3], 1e-5) == 0.0
    assert abs(fd_diff(sin(f2), 2, [0, 0, 0], 1e-5) - 1) <= 1e-9


smooth_exprs = st.recursive(
    st.one_of(
        st.integers(1, 5).map(sym),
        st.integers(-3, 3).map(Const),
    ),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: t[0] + t[1]),
        st.tuples(inner, inner).map(lambda t: t[0] - t[1]),
        st.tuples(inner, inner).map(lambda t: t[0] * t[1]),
        st.tuples(inner, inner).map(lambda t: t[0] / (t[1] * t[1] + 1)),
        st.tuples(inner, st.integers(0, 3)).map(lambda t: t[0] ** t[1]),
        inner.map(sin),
        inner.map(cos),
        inner.map(lambda x: sqrt(x * x + 1)),
        inner.map(lambda x: -x),
    ),
    max_leaves=8,
)


@settings(max_examples=60, deadline=None)
@given(smooth_exprs, st.integers(1, 5), st.integers(0, 10_000))
def test_diff_agrees_with_finite_differences(e, i, seed):
    d = diff(e, i)
    rng = np.random.default_rng(seed)
    for p in rng.uniform(-1, 1, size=(50, 5)):
        analytic = evaluate(d, p)
        fd = fd_diff(e, i, p, 1e-5)
        assert abs(analytic - fd) <= 1e-5 * (1 + abs(analytic))


# -------------------------------------------------------------- polynomials


def test_poly_normalize_examples():
    assert poly_normalize(f1 * f2 - f2 * f1).is_zero()
    assert poly_normalize((f1 + f2) ** 2 - f1 ** 2 - 2 * f1 * f2 - f2 ** 2).is_zero()
    assert poly_normalize(sin(f1)) is NOT_POLYNOMIAL
    assert poly_normalize(f1 / f2) is NOT_POLYNOMIAL
    assert not poly_normalize(f1 / 2).is_zero()


monomials = st.lists(
    st.tuples(st.integers(-4, 4), st.lists(st.integers(1, 5), max_size=3)),
    min_size=1,
    max_size=6,
)


def _build(terms, rnd: random.Random):
    pieces = []
    for c, vars_ in terms:
        factors = [Const(c)] + [sym(v) for v in vars_]
        rnd.shuffle(factors)
        while len(factors) > 1:
            k = rnd.randrange(len(factors) - 1)
            factors[k: k + 2] = [factors[k] * factors[k + 1]]
        pieces.append(factors[0])
    rnd.shuffle(pieces)
    while len(pieces) > 1:
        k = rnd.randrange(len(pieces) - 1)
        pieces[k: k + 2] = [pieces[k] + pieces[k + 1]]
    return pieces[0]


@settings(max_examples=80, deadline=None)
@given(monomials, st.integers(0, 1000))
def test_poly_normalize_invariant_under_reassociation(terms, seed):
    a = _build(terms, random.Random(seed))
    b = _build(terms, random.Random(seed + 1))
    pa, pb = poly_normalize(a), poly_normalize(b)
    assert pa == pb and pa.key == pb.key


@settings(max_examples=60, deadline=None)
@given(monomials)
def test_poly_normalize_idempotent(terms):
    from hyperclebsch.symexpr.canon import poly_to_expr

    p = poly_normalize(_build(terms, random.Random(0)))
    assert poly_normalize(poly_to_expr(p)) == p


# ---------------------------------------------------------------- zero test


def test_is_zero_examples():
    assert is_zero(f1 - f1, 1).status is ZeroStatus.ZERO
    v = is_zero(f1 * f2, 1, seed=5)
    assert v.status is ZeroStatus.NONZERO
    assert evaluate(f1 * f2, v.witness) == pytest.approx(v.value)
    trig = parse_expr("sin(f1)^2 + cos(f1)^2 - 1", 1)
    assert is_zero(trig, 1).status is ZeroStatus.PROBABLY_ZERO


def test_is_zero_unknown_when_undefined_everywhere():
    e = parse_expr("sqrt(-1 - f1^2)", 1)
    assert is_zero(e, 1).status is ZeroStatus.UNKNOWN


def test_is_zero_rejects_bad_trials():
    with pytest.raises(ValueError):
        is_zero(f1, 1, trials=0)


@settings(max_examples=60, deadline=None)
@given(smooth_exprs, st.integers(0, 100))
def test_is_zero_never_claims_zero_for_nonvanishing(e, seed):
    verdict = is_zero(e, M, seed=seed)
    pts = sample_points(M, seed + 1, 10)
    values = [abs(evaluate(e, p)) for p in pts]
    if max(values) > 1e-6:
        assert verdict.status is not ZeroStatus.ZERO


def test_exact_zero_handles_trig_and_sqrt():
    r = sqrt(f2 * f2 + f4 * f4)
    assert exact_zero(sin(r) ** 2 + cos(r) ** 2 - 1)
    assert exact_zero(r * r - f2 * f2 - f4 * f4)
    assert not exact_zero(sin(f1) - cos(f1))


# ---------------------------------------------------------------- round trip


@settings(max_examples=80, deadline=None)
@given(smooth_exprs)
def test_print_parse_round_trip(e):
    back = parse_expr(to_text(e), M)
    assert to_text(back) == to_text(e)
    for p in sample_points(M, 0, 5):
        assert evaluate(back, p) == pytest.approx(evaluate(e, p), rel=1e-12, abs=1e-12)
