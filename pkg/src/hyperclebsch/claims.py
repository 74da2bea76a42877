"""Registry of the identities asserted about hypercomplexified one-forms.

Each claim turns into a list of equations ``sum(terms) = 0`` built from a
:class:`~hyperclebsch.hyperform.PotentialSet` under a
:class:`ConventionConfig`.  The equations as printed are ambiguous in a few
ways, and the convention fixes one reading:

``coeff_kind``
    whether a coefficient written ``f2 X`` is the function ``f2`` times
    ``X`` (``function``) or ``df2 ^ X`` (``differential``).
``mul_order``
    for the differential reading, ``df2 ^ X`` (``left``) or ``X ^ df2``
    (``right``); for algebra-valued products, which side ``u`` acts from.
``b_variant``
    which ``B`` the duals come from (see :mod:`hyperclebsch.hyperform`).

A reading that adds forms of different degrees is reported ``IllFormed``
rather than coerced.  Zero-ness is decided coefficientwise: exact when the
canonicalizer clears every coefficient, numeric (seeded points) otherwise.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from itertools import product
from typing import Callable

import numpy as np

from . import __version__
from .extcalc import Form, HForm, _merge, ext_d, hreal, scalar_act
from .hyperalg import AlgebraSpec, HNum, default_algebra, exp_pure, hconj, hmul, make_algebra
from .hyperform import (
    PotentialSet,
    build_A,
    build_B,
    build_dF_closed,
    build_dQ,
    build_du,
    build_F,
    build_Fbar,
    build_Q,
    build_u,
    extract_duals,
    printed_duals,
)
from .symexpr import Const, Expr, diff, evaluate_many, normalize, sample_points, to_expr, to_text
from .symexpr.canon import _polynomial_tree

__all__ = [
    "Status",
    "ConventionConfig",
    "Claim",
    "Verdict",
    "PartResult",
    "Report",
    "NotApplicable",
    "registry",
    "get_claim",
    "verify",
    "check_dF_consistency",
    "run_suite",
    "AMBIGUOUS",
    "NUMERIC_TOLERANCE",
    "FD_TOLERANCE",
]

NUMERIC_TOLERANCE = 1e-9
FD_TOLERANCE = 1e-6
AMBIGUOUS = ("C3", "C4", "C5", "C6")


class NotApplicable(ValueError):
    pass


class Status(str, Enum):
    HOLDS_EXACT = "HoldsExact"
    HOLDS_NUMERIC = "HoldsNumeric"
    FAILS = "Fails"
    ILL_FORMED = "IllFormed"
    UNDERSPECIFIED = "Underspecified"


# worst first; a claim takes the worst status among its equations
_SEVERITY = [
    Status.ILL_FORMED,
    Status.FAILS,
    Status.UNDERSPECIFIED,
    Status.HOLDS_NUMERIC,
    Status.HOLDS_EXACT,
]


@dataclass(frozen=True)
class ConventionConfig:
    mul_order: str = "left"
    coeff_kind: str = "differential"
    b_variant: str = "plain"
    backend: str | None = None
    seed: int = 0
    trials: int = 20

    def __post_init__(self):
        if self.mul_order not in ("left", "right"):
            raise ValueError(f"mul_order must be left or right, got {self.mul_order!r}")
        if self.coeff_kind not in ("function", "differential"):
            raise ValueError(f"coeff_kind must be function or differential, got {self.coeff_kind!r}")
        if self.b_variant not in ("plain", "conjugated"):
            raise ValueError(f"b_variant must be plain or conjugated, got {self.b_variant!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    def algebra(self, m: int) -> AlgebraSpec:
        return make_algebra(self.backend, m) if self.backend else default_algebra(m)

    def reading(self) -> dict:
        return {"coeff_kind": self.coeff_kind, "mul_order": self.mul_order, "b_variant": self.b_variant}


@dataclass(frozen=True)
class PartResult:
    label: str
    status: Status
    max_residual: float | None = None
    detail: str | None = None


@dataclass(frozen=True)
class Verdict:
    claim: str
    status: Status
    convention: ConventionConfig
    max_residual: float | None = None
    witness: dict | None = None
    detail: str | None = None
    parts: tuple = ()
    ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status in (Status.HOLDS_EXACT, Status.HOLDS_NUMERIC)

    def part(self, label: str) -> PartResult:
        for p in self.parts:
            if p.label == label:
                return p
        raise KeyError(label)


@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str
    applicable_m: frozenset | None
    build: Callable = field(repr=False)
    kind: str = "identity"

    def applies(self, m: int) -> bool:
        return self.applicable_m is None or m in self.applicable_m


# ------------------------------------------------------------------ equations
#
# Claim equations are expression graphs over a handful of leaf forms (the
# duals, their derivatives, potential differentials).  They are decided
# numerically first: leaves are evaluated at the sample points and the
# wedge algebra runs on float arrays.  Only equations that pass are expanded
# symbolically and canonicalized; expanding every wedge up front costs far
# more, and for trig-laden coefficients does not fit in memory at m = 7.


class _L:
    """Lazy real form: a leaf :class:`Form`, a wedge, a sum or a negation."""

    __slots__ = ("op", "args", "m", "degree")

    def __init__(self, op: str, args: tuple, m: int, degree: int):
        self.op, self.args, self.m, self.degree = op, args, m, degree

    def leaves(self):
        if self.op == "leaf":
            yield self
        else:
            for a in self.args:
                yield from a.leaves()

    def sym(self, memo: dict) -> Form:
        """Unsimplified symbolic expansion."""
        hit = memo.get(id(self))
        if hit is not None:
            return hit
        if self.op == "leaf":
            out = self.args[0]
        elif self.op == "neg":
            a = self.args[0].sym(memo)
            out = Form._raw(a.m, a.degree, {k: -c for k, c in a.terms.items()})
        else:
            parts = [a.sym(memo) for a in self.args]
            out = _raw_wedge(*parts) if self.op == "wedge" else _raw_sum(self.m, self.degree, parts)
        memo[id(self)] = out
        return out

    def num(self, memo: dict) -> dict:
        """Coefficient arrays over the sample points; leaves must be in ``memo``."""
        hit = memo.get(id(self))
        if hit is not None:
            return hit
        if self.op == "neg":
            out = {k: -v for k, v in self.args[0].num(memo).items()}
        elif self.op == "sum":
            out = {}
            for a in self.args:
                for k, v in a.num(memo).items():
                    out[k] = out[k] + v if k in out else v
        else:
            a, b = (x.num(memo) for x in self.args)
            out = {}
            if self.degree <= 2 * self.m + 1:
                for ka, va in a.items():
                    for kb, vb in b.items():
                        sign, key = _merge(ka, kb)
                        if sign:
                            v = va * vb if sign > 0 else -(va * vb)
                            out[key] = out[key] + v if key in out else v
        memo[id(self)] = out
        return out


def _leaf(form: Form) -> _L:
    return _L("leaf", (form,), form.m, form.degree)


def _w(a: _L, b: _L) -> _L:
    return _L("wedge", (a, b), a.m, a.degree + b.degree)


def _neg(a: _L) -> _L:
    return _L("neg", (a,), a.m, a.degree)


def _sum(terms) -> _L:
    terms = tuple(terms)
    return terms[0] if len(terms) == 1 else _L("sum", terms, terms[0].m, terms[0].degree)


def _wedge_all(forms) -> _L:
    out = forms[0]
    for f in forms[1:]:
        out = _w(out, f)
    return out


def _power(a: _L, n: int) -> _L:
    out = _leaf(Form.function(a.m, 1))
    for _ in range(n):
        out = _w(out, a)
    return out


def _literal_zero(c) -> bool:
    return isinstance(c, Const) and c.value == 0


def _raw_wedge(a: Form, b: Form) -> Form:
    degree = a.degree + b.degree
    out: dict = {}
    if degree <= 2 * a.m + 1:
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                sign, key = _merge(ka, kb)
                if sign:
                    term = ca * cb if sign > 0 else -(ca * cb)
                    out[key] = out[key] + term if key in out else term
    return Form._raw(a.m, degree, out)


def _raw_sum(m: int, degree: int, forms) -> Form:
    out: dict = {}
    for f in forms:
        for k, c in f.terms.items():
            out[k] = out[k] + c if k in out else c
    return Form._raw(m, degree, out)


def _raw_d(a: Form) -> Form:
    out: dict = {}
    for key, c in a.terms.items():
        for i in range(1, 2 * a.m + 2):
            if i in key:
                continue
            dc = diff(c, i)
            if _literal_zero(dc):
                continue
            sign, merged = _merge((i,), key)
            term = dc if sign > 0 else -dc
            out[merged] = out[merged] + term if merged in out else term
    return Form._raw(a.m, a.degree + 1, out)


class _HL:
    """Lazy algebra-valued form: one :class:`_L` (or ``None``) per blade."""

    def __init__(self, spec: AlgebraSpec, parts: list, degree: int):
        self.spec, self.parts, self.degree = spec, parts, degree

    @classmethod
    def of(cls, x: HForm) -> "_HL":
        return cls(x.spec, [None if p.is_zero() else _leaf(p) for p in x.parts], x.degree)

    @classmethod
    def from_hnum(cls, q: HNum, m: int) -> "_HL":
        parts = [_leaf(Form.function(m, c)) for c in q.coeffs]
        return cls(q.spec, [None if p.args[0].is_zero() else p for p in parts], 0)

    def __neg__(self) -> "_HL":
        return _HL(self.spec, [None if p is None else _neg(p) for p in self.parts], self.degree)


def _hprod(spec: AlgebraSpec, x: list, y: list, degree: int, m: int) -> _HL:
    """Blade-wise product of two lazy part lists through the table."""
    buckets = [[] for _ in range(spec.dim)]
    for a, fa in enumerate(x):
        if fa is None:
            continue
        for b, fb in enumerate(y):
            if fb is None:
                continue
            term = _w(fa, fb)
            buckets[spec.products[a][b]].append(term if spec.signs[a][b] > 0 else _neg(term))
    return _HL(spec, [_sum(b) if b else None for b in buckets], degree)


@dataclass
class _Eq:
    """``sum(terms) == 0``; terms are :class:`_L` or :class:`_HL`."""

    label: str
    terms: list
    tolerance: float = NUMERIC_TOLERANCE

    def components(self) -> list[tuple[str, _L]]:
        """``(blade prefix, summed lazy form)`` per nonzero component."""
        if isinstance(self.terms[0], _L):
            return [("", _sum(self.terms))]
        spec = self.terms[0].spec
        out = []
        for i in range(spec.dim):
            parts = [t.parts[i] for t in self.terms if t.parts[i] is not None]
            if parts:
                out.append((f"{spec.names[i]}: ", _sum(parts)))
        return out


class _Ctx:
    """Everything a claim builder needs, computed on demand."""

    def __init__(self, P: PotentialSet, cfg: ConventionConfig):
        self.P = P
        self.m = P.m
        self.cfg = cfg
        self.algebra = cfg.algebra(P.m)
        self._bundle = None
        self._cache: dict = {}

    @property
    def bundle(self):
        if self._bundle is None:
            self._bundle = extract_duals(build_B(self.P, self.cfg.b_variant, self.algebra))
        return self._bundle

    def _memo(self, key, make):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    def X(self, k: int) -> _L:
        """``A`` for ``k == 0``, otherwise ``A~k``."""
        return self._memo(("X", k), lambda: _leaf(self.bundle.A if k == 0 else self.bundle.dual(k)))

    def dX(self, k: int) -> _L:
        return self._memo(("dX", k), lambda: _leaf(_raw_d(self.X(k).args[0])))

    def f(self, i: int) -> Expr:
        return self.P.f(i)

    def df(self, i: int) -> _L:
        return self._memo(("df", i), lambda: _leaf(ext_d(Form.function(self.m, self.f(i)))))

    def fn(self, i: int) -> _L:
        return self._memo(("f", i), lambda: _leaf(Form.function(self.m, self.f(i))))

    def coef(self, i: int, x: _L) -> _L:
        """The printed ``f_i x`` under the configured reading."""
        if self.cfg.coeff_kind == "function":
            return _w(self.fn(i), x)
        if self.cfg.mul_order == "left":
            return _w(self.df(i), x)
        return _w(x, self.df(i))

    def with_potentials(self, P: PotentialSet) -> "_Ctx":
        return _Ctx(P, self.cfg)


def _term_label(indices: tuple) -> str:
    return "^".join(f"df{i}" for i in indices) or "1"


def _evaluate_leaves(ctx: _Ctx, roots) -> tuple[np.ndarray, dict]:
    """Seeded points where every leaf is defined, and the leaf arrays there.

    Up to ``cfg.trials`` points are taken from ``10 * cfg.trials`` draws.
    """
    leaves, seen = [], set()
    for root in roots:
        for leaf in root.leaves():
            if id(leaf) not in seen:
                seen.add(id(leaf))
                leaves.append(leaf)
    index = [(leaf, key) for leaf in leaves for key in leaf.args[0].terms]
    exprs = [leaf.args[0].terms[key] for leaf, key in index]
    candidates = sample_points(ctx.m, ctx.cfg.seed, 10 * ctx.cfg.trials)
    if exprs:
        values = evaluate_many(exprs, candidates)
        good = np.flatnonzero(np.all(np.isfinite(values), axis=0))[: ctx.cfg.trials]
    else:
        values = np.zeros((0, len(candidates)))
        good = np.arange(ctx.cfg.trials)
    memo: dict = {id(leaf): {} for leaf in leaves}
    for row, (leaf, key) in enumerate(index):
        memo[id(leaf)][key] = values[row, good]
    return candidates[good], memo


def _points(m: int, cfg: ConventionConfig, exprs: list) -> tuple[np.ndarray, np.ndarray]:
    """Up to ``cfg.trials`` seeded points where every expression is defined."""
    candidates = sample_points(m, cfg.seed, 10 * cfg.trials)
    values = evaluate_many(exprs, candidates)
    good = np.flatnonzero(np.all(np.isfinite(values), axis=0))[: cfg.trials]
    return candidates[good], values[:, good]


def _canonical_zero(form: Form) -> bool:
    return Form(form.m, form.degree, form.terms).is_zero()


def _decide(ctx: _Ctx, eqs: list[_Eq]) -> dict:
    parts, pending = [], []
    for eq in eqs:
        if isinstance(eq, PartResult):
            parts.append(eq)
            continue
        degrees = sorted({t.degree for t in eq.terms})
        if len(degrees) > 1:
            detail = "mixes degrees " + ", ".join(str(d) for d in degrees)
            parts.append(PartResult(eq.label, Status.ILL_FORMED, detail=detail))
            continue
        parts.append(None)
        pending.append((len(parts) - 1, eq, eq.components()))

    witness = None
    worst = 0.0
    if pending:
        pts, memo = _evaluate_leaves(ctx, [c for _, _, comps in pending for _, c in comps])
        for slot, eq, comps in pending:
            if len(pts) == 0:
                parts[slot] = PartResult(eq.label, Status.UNDERSPECIFIED, detail="no admissible sample point")
                continue
            residual, where = 0.0, None
            for prefix, comp in comps:
                for key, v in comp.num(memo).items():
                    col = int(np.argmax(np.abs(v)))
                    if abs(v[col]) > residual:
                        residual, where = float(abs(v[col])), (prefix + _term_label(key), col, float(v[col]))
            if residual <= eq.tolerance:
                sym_memo: dict = {}
                if all(_canonical_zero(c.sym(sym_memo)) for _, c in comps):
                    parts[slot] = PartResult(eq.label, Status.HOLDS_EXACT, 0.0)
                else:
                    worst = max(worst, residual)
                    parts[slot] = PartResult(eq.label, Status.HOLDS_NUMERIC, residual)
                continue
            worst = max(worst, residual)
            parts[slot] = PartResult(eq.label, Status.FAILS, residual)
            if witness is None:
                term, col, value = where
                witness = {
                    "equation": eq.label,
                    "point": [float(x) for x in pts[col]],
                    "seed": ctx.cfg.seed,
                    "term": term,
                    "value": value,
                }
    return _summarize(parts, worst, witness)


def _summarize(parts, residual, witness, detail=None) -> dict:
    status = min((p.status for p in parts), key=_SEVERITY.index)
    if detail is None and status == Status.ILL_FORMED:
        detail = "; ".join(f"{p.label}: {p.detail}" for p in parts if p.status == Status.ILL_FORMED)
    if status == Status.ILL_FORMED:
        residual = None
    return {
        "status": status,
        "max_residual": residual,
        "witness": witness,
        "detail": detail,
        "parts": tuple(parts),
    }


def _decide_nonzero(ctx: _Ctx, label: str, form: _L) -> dict:
    """Success means ``form`` does not vanish identically."""
    pts, memo = _evaluate_leaves(ctx, [form])
    values = form.num(memo)
    peak, where = 0.0, None
    for key, v in values.items():
        if len(v) == 0:
            continue
        col = int(np.argmax(np.abs(v)))
        if abs(v[col]) > peak:
            peak, where = float(abs(v[col])), (key, col, float(v[col]))
    if peak <= NUMERIC_TOLERANCE:
        if _canonical_zero(form.sym({})):
            detail = "vanishes identically (degenerate potentials)"
        else:
            detail = "no nonzero value found at the sample points"
        part = PartResult(label, Status.UNDERSPECIFIED, peak, detail)
        return _summarize([part], peak, None, detail)
    key, col, value = where
    status, coefficient = Status.HOLDS_NUMERIC, None
    if all(_polynomial_tree(c) for leaf in form.leaves() for c in leaf.args[0].terms.values()):
        # polynomial coefficients: any nonzero canonical coefficient certifies the
        # claim; report the simplest one as the witness monomial
        # report the simplest one as the witness monomial, stopping at the first
        # nonzero constant (normalizing every coefficient is slow at m = 7)
        raw = sorted(form.sym({}).terms.items(), key=lambda kc: (len(to_text(kc[1])), kc[0]))
        best = None
        for k, c in raw:
            c = normalize(c)
            if c.is_zero():
                continue
            constant = c.constant() is not None
            text = to_text(to_expr(c))
            rank = (not constant, len(text), k)
            if best is None or rank < best[0]:
                best = (rank, k, text)
            if constant:
                break
        if best is not None:
            _, key, coefficient = best
            status = Status.HOLDS_EXACT
            v = values[key]
            col = int(np.argmax(np.abs(v)))
            value = float(v[col])
    witness = {
        "equation": label,
        "term": _term_label(key),
        "point": [float(x) for x in pts[col]],
        "seed": ctx.cfg.seed,
        "value": value,
    }
    if coefficient is not None:
        witness["coefficient"] = coefficient
    return _summarize([PartResult(label, status, peak)], peak, witness)


# -------------------------------------------------------------------- claims


def _c1(ctx: _Ctx):
    B = build_B(ctx.P, ctx.cfg.b_variant, ctx.algebra)
    return [_Eq("Re(B) = A", [_leaf(hreal(B)), _neg(_leaf(build_A(ctx.P)))])]


def _c2(ctx: _Ctx):
    eqs = []
    for k, printed in enumerate(printed_duals(ctx.P), start=1):
        if printed is None:
            eqs.append(PartResult(f"A~{k}", Status.UNDERSPECIFIED, detail="no printed formula"))
        else:
            eqs.append(_Eq(f"A~{k}", [ctx.X(k), _neg(_leaf(printed))]))
    return eqs


def _c3(ctx: _Ctx):
    spec, m = ctx.algebra, ctx.m
    B = [None] * spec.dim
    dB = [None] * spec.dim
    for k in range(ctx.m + 1):
        B[k], dB[k] = ctx.X(k), ctx.dX(k)
    if ctx.cfg.coeff_kind == "function":
        coeff = [None] + [ctx.fn(2 * i) for i in spec.generators()]
        coeff += [None] * (spec.dim - len(coeff))
        degree = 1
    else:
        coeff = [None] + [ctx.df(2 * i) for i in spec.generators()]
        coeff += [None] * (spec.dim - len(coeff))
        degree = 2
    if ctx.cfg.mul_order == "left":
        rhs = _hprod(spec, coeff, B, degree, m)
    else:
        rhs = _hprod(spec, B, coeff, degree, m)
    return [_Eq("dB = u B", [_HL(spec, dB, 2), -rhs])]


def _c4(ctx: _Ctx):
    terms = [ctx.dX(0)] + [ctx.coef(2 * k, ctx.X(k)) for k in range(1, ctx.m + 1)]
    return [_Eq("dA + sum f_2k A~k = 0", terms)]


# Quaternion component equations: (lhs dual, [(sign, potential, dual), ...]).
_COMPONENT = [
    ("dA", 0, [(1, 2, 1), (1, 4, 2), (1, 6, 3)]),
    ("dA~1", 1, [(-1, 2, 0), (1, 6, 2), (-1, 4, 3)]),
    ("dA~2", 2, [(-1, 4, 0), (-1, 6, 1), (1, 2, 3)]),
    ("dA~3", 3, [(-1, 6, 0), (1, 4, 1), (-1, 2, 2)]),
]
_DERIVED = [
    ("f2 dA~1 + f4 dA~2 + f6 dA~3", [(1, 2, 1), (1, 4, 2), (1, 6, 3)]),
    ("f2 dA - f6 dA~2 + f4 dA~3", [(1, 2, 0), (-1, 6, 2), (1, 4, 3)]),
    ("f4 dA + f6 dA~1 - f2 dA~3", [(1, 4, 0), (1, 6, 1), (-1, 2, 3)]),
    ("f6 dA - f4 dA~1 + f2 dA~2", [(1, 6, 0), (-1, 4, 1), (1, 2, 2)]),
]


def _signed(sign, form: _L) -> _L:
    return form if sign > 0 else _neg(form)


def _component_eq(ctx: _Ctx, label, k, rest) -> _Eq:
    terms = [ctx.dX(k)] + [_signed(s, ctx.coef(i, ctx.X(j))) for s, i, j in rest]
    return _Eq(label, terms)


def _derived_eq(ctx: _Ctx, label, rest) -> _Eq:
    return _Eq(label, [_signed(s, ctx.coef(i, ctx.dX(j))) for s, i, j in rest])


def _c5(ctx: _Ctx):
    eqs = [_component_eq(ctx, f"{lhs} component", k, rest) for lhs, k, rest in _COMPONENT]
    eqs += [_derived_eq(ctx, label, rest) for label, rest in _DERIVED]
    return eqs


def _c6(ctx: _Ctx):
    # the third printed term lacks its d; it is restored here
    terms = [ctx.coef(2 * k, ctx.dX(k)) for k in range(1, ctx.m + 1)]
    return [_Eq("sum f_2k dA~k = 0", terms)]


def _annihilation(ctx: _Ctx, k: int, others, prefix: str = "") -> _Eq:
    name = "dA" if k == 0 else f"dA~{k}"
    label = prefix + " ^ ".join([name] + ["A" if j == 0 else f"A~{j}" for j in others])
    return _Eq(label, [_wedge_all([ctx.dX(k)] + [ctx.X(j) for j in others])])


def _c7(ctx: _Ctx):
    full = range(ctx.m + 1)
    return [_annihilation(ctx, k, [j for j in full if j != k]) for k in full]


def _c8(ctx: _Ctx) -> _L:
    return _wedge_all([ctx.X(k) for k in range(ctx.m + 1)])


def _power_chain(ctx: _Ctx, duals, power: int, prefix: str = ""):
    base = _w(ctx.X(0), _power(ctx.dX(0), power))
    return [
        _Eq(
            f"{prefix}A ^ dA^{power} = A~{k} ^ (dA~{k})^{power}",
            [base, _neg(_w(ctx.X(k), _power(ctx.dX(k), power)))],
        )
        for k in duals
    ]


def _c9(ctx: _Ctx):
    return _power_chain(ctx, range(1, ctx.m + 1), ctx.m)


def _c10(ctx: _Ctx):
    A, At, dA, dAt = ctx.X(0), ctx.X(1), ctx.dX(0), ctx.dX(1)
    dg = ctx.df(2)
    dg_term = _w(dg, At) if ctx.cfg.mul_order == "left" else _w(At, dg)
    return [
        _Eq("dA + A~ dg = 0", [dA, dg_term]),
        _Eq("A~ ^ dA = 0", [_w(At, dA)]),
        _Eq("A ^ dA~ = 0", [_w(A, dAt)]),
        _Eq("A ^ dA = A~ ^ dA~", [_w(A, dA), _neg(_w(At, dAt))]),
    ]


_REDUCED_COMPONENT = [
    ("dA", 0, [(1, 2, 1), (1, 4, 2)]),
    ("dA~1", 1, [(-1, 2, 0), (-1, 4, 3)]),
    ("dA~2", 2, [(-1, 4, 0), (1, 2, 3)]),
    ("dA~3", 3, [(1, 4, 1), (-1, 2, 2)]),
]
_REDUCED_DERIVED = [
    ("f2 dA~1 + f4 dA~2", [(1, 2, 1), (1, 4, 2)]),
    ("f2 dA + f4 dA~3", [(1, 2, 0), (1, 4, 3)]),
    ("f4 dA - f2 dA~3", [(1, 4, 0), (-1, 2, 3)]),
    ("f4 dA~1 - f2 dA~2", [(1, 4, 1), (-1, 2, 2)]),
]
_REDUCED_WEDGE = [(0, [1, 2]), (1, [0, 3]), (2, [0, 3]), (3, [1, 2])]


def _c11(ctx: _Ctx):
    tag = "[f5=f6=0] "
    sub = ctx.with_potentials(ctx.P.with_zeros(5, 6))
    eqs = [_component_eq(sub, f"{tag}{lhs} component", k, rest) for lhs, k, rest in _REDUCED_COMPONENT]
    eqs += [_derived_eq(sub, tag + label, rest) for label, rest in _REDUCED_DERIVED]
    eqs += [_annihilation(sub, k, others, tag) for k, others in _REDUCED_WEDGE]
    eqs += _power_chain(sub, (1, 2, 3), 2, tag)

    tag = "[rank 3] "
    low = ctx.with_potentials(ctx.P.with_zeros(3, 4, 5, 6))
    A, A1, dA, dA1 = low.X(0), low.X(1), low.dX(0), low.dX(1)
    eqs += [
        _Eq(tag + "A~2 = 0", [low.X(2)]),
        _Eq(tag + "A~3 = 0", [low.X(3)]),
        _Eq(tag + "dA + f2 A~1 = 0", [dA, low.coef(2, A1)]),
        _Eq(tag + "dA~1 - f2 A = 0", [dA1, _neg(low.coef(2, A))]),
        _Eq(tag + "dA ^ A~1 = 0", [_w(dA, A1)]),
        _Eq(tag + "dA~1 ^ A = 0", [_w(dA1, A)]),
        _Eq(tag + "A ^ dA = A~1 ^ dA~1", [_w(A, dA), _neg(_w(A1, dA1))]),
    ]
    return eqs


def _dFbar_closed(P: PotentialSet, algebra: AlgebraSpec) -> HForm:
    Qbar = hconj(build_Q(P, algebra))
    dQbar = HForm(algebra, [p if i == 0 else -p for i, p in enumerate(build_dQ(P, algebra).parts)])
    inner = dQbar + scalar_act(Qbar, build_du(P, algebra), "left")
    return scalar_act(exp_pure(build_u(P, algebra)), inner, "right")


def _c13(ctx: _Ctx):
    P, alg, m = ctx.P, ctx.algebra, ctx.m
    norm = sum((P.f(2 * i - 1) ** 2 for i in range(1, m + 1)), P.f(2 * m + 1) ** 2)
    FFbar = hmul(build_F(P, alg), build_Fbar(P, alg)) - HNum.scalar(alg, norm)
    u = build_u(P, alg)
    lhs = [
        scalar_act(exp_pure(u), build_dF_closed(P, alg), "left"),
        scalar_act(exp_pure(-u), _dFbar_closed(P, alg), "left"),
    ]
    A = _leaf(build_A(P))
    twice_A = _HL(alg, [_sum([A, A])] + [None] * (alg.dim - 1), 1)
    return [
        _Eq("F Fbar = |Q|^2", [_HL.from_hnum(FFbar, m)]),
        _Eq("exp(u) dF + exp(-u) dFbar = 2A", [_HL.of(x) for x in lhs] + [-twice_A]),
    ]


def check_dF_consistency(P: PotentialSet, config: ConventionConfig | None = None, h: float = 1e-5):
    """Largest gap between the closed-form ``dF`` and central differences of ``F``.

    Returns ``(max_residual, witness_point)``.  ``F = Q exp(-u)`` is
    evaluated numerically as a function of the coordinates.
    """
    config = config or ConventionConfig()
    if h <= 0:
        raise ValueError("step must be positive")
    algebra = config.algebra(P.m)
    n = 2 * P.m + 1
    closed = build_dF_closed(P, algebra)
    # coefficient of dx_j on every blade
    exprs = [p.coefficient((j,)) for p in closed.parts for j in range(1, n + 1)]
    pts, closed = _points(P.m, config, exprs + list(P.fs))
    closed = closed[: len(exprs)]

    def F_at(x):
        vals = evaluate_many(P.fs, x[None, :])[:, 0]
        Q = HNum.from_dict(algebra, {0: vals[n - 1], **{i: vals[2 * i - 2] for i in algebra.generators()}})
        u = HNum.from_dict(algebra, {i: -vals[2 * i - 1] for i in algebra.generators()})
        return np.array(hmul(Q, exp_pure(u)).coeffs, dtype=float)

    worst, where = 0.0, None
    for col, x in enumerate(pts):
        grads = []
        for j in range(n):
            step = np.zeros(n)
            step[j] = h
            grads.append((F_at(x + step) - F_at(x - step)) / (2 * h))
        true = np.array(grads).T.reshape(-1)  # blade-major, matching exprs
        gap = float(np.max(np.abs(true - closed[:, col])))
        if gap > worst or where is None:
            worst, where = max(worst, gap), x
    return worst, (None if where is None else [float(v) for v in where])


def _c12_verdict(ctx: _Ctx) -> dict:
    residual, point = check_dF_consistency(ctx.P, ctx.cfg)
    status = Status.HOLDS_NUMERIC if residual <= FD_TOLERANCE else Status.FAILS
    witness = None
    if status == Status.FAILS:
        witness = {"equation": "dF closed form", "point": point, "seed": ctx.cfg.seed}
    part = PartResult("dF closed form vs central differences", status, residual)
    return _summarize([part], residual, witness)


_REGISTRY = (
    Claim("C1", "A = Re(exp(u) dF)", None, _c1),
    Claim("C2", "printed dual formulas A~1 = df1 - f_{2m+1} df2 - f3 df6 + f5 df4 ...", None, _c2),
    Claim("C3", "dB = (e1 f2 + e2 f4 + ...) B", None, _c3),
    Claim("C4", "dA + f2 A~1 + f4 A~2 + ... = 0", None, _c4),
    Claim("C5", "quaternion component equations and their derivatives", frozenset({3}), _c5),
    Claim("C6", "f2 dA~1 + f4 dA~2 + f6 A~3 + ... = 0", None, _c6),
    Claim("C7", "dA~k ^ (all other forms) = 0", None, _c7),
    Claim("C8", "A ^ A~1 ^ ... ^ A~m != 0", None, _c8, kind="inequality"),
    Claim("C9", "A ^ dA^m = A~k ^ (dA~k)^m", None, _c9),
    Claim("C10", "complex duality conditions with respect to g", frozenset({1}), _c10),
    Claim("C11", "reduced cases f5 = f6 = 0 and f3 = f4 = f5 = f6 = 0", frozenset({3}), _c11),
    Claim("C12", "closed-form dF against the exterior derivative of F", None, None, kind="engine"),
    Claim("C13", "F Fbar = |Q|^2 and A = (exp(u) dF + exp(-u) dFbar)/2", None, _c13),
)


def registry() -> list[Claim]:
    return list(_REGISTRY)


def get_claim(claim_id: str) -> Claim:
    for c in _REGISTRY:
        if c.id == claim_id.upper():
            return c
    raise KeyError(f"unknown claim {claim_id!r}")


def verify(claim: Claim | str, config: ConventionConfig, P: PotentialSet) -> Verdict:
    if isinstance(claim, str):
        claim = get_claim(claim)
    if not claim.applies(P.m):
        raise NotApplicable(f"{claim.id} applies to m in {sorted(claim.applicable_m)}, not {P.m}")
    start = time.perf_counter()
    ctx = _Ctx(P, config)
    if claim.kind == "engine":
        out = _c12_verdict(ctx)
    elif claim.kind == "inequality":
        out = _decide_nonzero(ctx, claim.anchor, claim.build(ctx))
    else:
        out = _decide(ctx, claim.build(ctx))
    ms = (time.perf_counter() - start) * 1000.0
    return Verdict(claim.id, convention=config, ms=ms, **out)


# ------------------------------------------------------------------- reports


def _verdict_json(claim: Claim, v: Verdict, timing: bool) -> dict:
    out = {"id": claim.id, "anchor": claim.anchor, "status": v.status.value}
    out["convention"] = v.convention.reading()
    if v.max_residual is not None:
        out["max_residual"] = v.max_residual
    if v.witness is not None:
        out["witness"] = v.witness
    if v.detail:
        out["detail"] = v.detail
    out["parts"] = [
        {k: (x.value if isinstance(x, Status) else x) for k, x in asdict(p).items() if x is not None}
        for p in v.parts
    ]
    if timing:
        out["ms"] = round(v.ms, 3)
    return out


@dataclass(frozen=True)
class Report:
    m: int
    backend: str
    seed: int
    convention: ConventionConfig
    entries: tuple  # (Claim, Verdict) pairs in registry order
    version: str = __version__

    def verdicts(self, claim_id: str) -> list[Verdict]:
        return [v for c, v in self.entries if c.id == claim_id]

    def to_json(self, timing: bool = False) -> dict:
        return {
            "m": self.m,
            "backend": self.backend,
            "seed": self.seed,
            "version": self.version,
            "convention": {**self.convention.reading(), "trials": self.convention.trials},
            "tolerance": {"numeric": NUMERIC_TOLERANCE, "finite_difference": FD_TOLERANCE},
            "claims": [_verdict_json(c, v, timing) for c, v in self.entries],
        }

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2)

    def to_text(self, timing: bool = False) -> str:
        c = self.convention
        lines = [
            f"m={self.m} backend={self.backend} seed={self.seed} trials={c.trials}",
            f"default reading: coeff_kind={c.coeff_kind} mul_order={c.mul_order} b_variant={c.b_variant}",
        ]
        for claim, v in self.entries:
            r = v.convention
            line = f"{claim.id:<4} {v.status.value:<15} [{r.coeff_kind}/{r.mul_order}/{r.b_variant}]"
            if v.max_residual is not None:
                line += f" residual={v.max_residual:.3g}"
            if timing:
                line += f" {v.ms:.1f}ms"
            lines.append(line)
            if v.detail:
                lines.append(f"     {v.detail}")
            if v.witness:
                lines.append(f"     witness: {json.dumps(v.witness)}")
        return "\n".join(lines)


def run_suite(
    config: ConventionConfig,
    P: PotentialSet | int,
    grid: bool = False,
    ids=None,
) -> Report:
    """Run every applicable claim; ambiguous ones once per grid cell if ``grid``.

    Failures are recorded, never raised.
    """
    if isinstance(P, int):
        P = PotentialSet.generic(P)
    algebra = config.algebra(P.m)
    wanted = None if ids is None else {i.upper() for i in ids}
    entries = []
    for claim in _REGISTRY:
        if wanted is not None and claim.id not in wanted:
            continue
        if not claim.applies(P.m):
            continue
        if grid and claim.id in AMBIGUOUS:
            cells = [
                replace(config, coeff_kind=k, mul_order=o)
                for k, o in product(("differential", "function"), ("left", "right"))
            ]
        else:
            cells = [config]
        entries += [(claim, verify(claim, cell, P)) for cell in cells]
    return Report(P.m, algebra.backend, config.seed, config, tuple(entries))
