"""Differential forms on the chart ``(f1, ..., f_{2m+1})``.

A :class:`Form` is homogeneous of one degree and stores its coefficients
sparsely, keyed by strictly increasing index tuples.  Coefficients are
canonicalized on insertion and zeros are dropped, so an empty form is an
exact zero.  An :class:`HForm` is an algebra-valued form: one :class:`Form`
per basis blade of an :class:`~hyperclebsch.hyperalg.AlgebraSpec`.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Mapping

from .hyperalg import AlgebraSpec, HNum, SpecMismatch
from .symexpr import Expr, as_expr, diff, simplify, to_text
from .symexpr.expr import ONE, ZERO, Const, Div, Neg

__all__ = [
    "DegreeMismatch",
    "Form",
    "HForm",
    "wedge",
    "ext_d",
    "hwedge",
    "scalar_act",
    "hcomponent",
    "hreal",
    "hext_d",
    "wedge_power",
]


class DegreeMismatch(ValueError):
    pass


def _merge(a: tuple, b: tuple):
    """Sign and sorted union of two index tuples, or ``(0, None)`` on overlap."""
    if set(a) & set(b):
        return 0, None
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(a + b))


def _clean(c) -> Expr | None:
    c = simplify(as_expr(c))
    if isinstance(c, Const) and c.value == 0:
        return None
    return c


class Form:
    """A degree-``p`` form ``sum(c_I dx_I)`` on ``2m+1`` coordinates."""

    __slots__ = ("m", "degree", "_terms")

    def __init__(self, m: int, degree: int, terms: Mapping | None = None):
        n = 2 * m + 1
        if not 0 <= degree:
            raise ValueError("degree must be non-negative")
        self.m = m
        self.degree = degree
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise DegreeMismatch(f"index tuple {key} in a {degree}-form")
            if any(b <= a for a, b in zip(key, key[1:])):
                raise ValueError(f"indices {key} are not strictly increasing")
            if key and not (1 <= key[0] and key[-1] <= n):
                raise ValueError(f"indices {key} outside 1..{n}")
            c = _clean(c)
            if c is not None:
                clean[key] = c
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def _raw(cls, m: int, degree: int, terms: dict) -> "Form":
        out = object.__new__(cls)
        out.m, out.degree = m, degree
        out._terms = dict(sorted(terms.items()))
        return out

    @classmethod
    def zero(cls, m: int, degree: int) -> "Form":
        return cls._raw(m, degree, {})

    @classmethod
    def function(cls, m: int, c) -> "Form":
        """The 0-form ``c``."""
        return cls(m, 0, {(): c})

    @classmethod
    def d(cls, m: int, i: int, coeff=ONE) -> "Form":
        """``coeff * df_i``."""
        return cls(m, 1, {(i,): coeff})

    @property
    def terms(self) -> Mapping[tuple, Expr]:
        return MappingProxyType(self._terms)

    def coefficient(self, indices) -> Expr:
        return self._terms.get(tuple(indices), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.m, self.degree, self._terms) == (other.m, other.degree, other._terms)

    def __hash__(self):
        return hash((self.m, self.degree, tuple(self._terms.items())))

    def _check(self, other: "Form"):
        if self.m != other.m:
            raise ValueError(f"forms live on different charts (m={self.m}, m={other.m})")
        if self.degree != other.degree:
            raise DegreeMismatch(f"cannot add a {self.degree}-form and a {other.degree}-form")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return Form(self.m, self.degree, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form._raw(self.m, self.degree, {k: simplify(-c) for k, c in self._terms.items()})

    def __mul__(self, c) -> "Form":
        """Multiply every coefficient by the function ``c``."""
        if isinstance(c, Form):
            return NotImplemented
        c = as_expr(c)
        return Form(self.m, self.degree, {k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __repr__(self):
        return f"Form(m={self.m}, degree={self.degree}, {self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        """``"f1 df2 + df3"``; wedges are written ``df1^df2``."""
        if not self._terms:
            return "0"
        pieces = []
        for key, c in self._terms.items():
            basis = "^".join(f"df{i}" for i in key)
            negative = False
            if isinstance(c, Const) and c.value < 0:
                negative, c = True, Const(-c.value)
            elif isinstance(c, Neg):
                negative, c = True, c.arg
            if not basis:
                body = to_text(c)
            elif isinstance(c, Const) and c.value == 1:
                body = basis
            else:
                text = to_text(c)
                if c.precedence < 2 or isinstance(c, Div):
                    text = f"({text})"
                body = f"{text} {basis}"
            pieces.append((negative, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for negative, body in pieces[1:]:
            out += f" {'-' if negative else '+'} {body}"
        return out

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"indices": list(k), "coeff": to_text(c)} for k, c in self._terms.items()],
        }


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; terms with a repeated index vanish."""
    if a.m != b.m:
        raise ValueError("forms live on different charts")
    degree = a.degree + b.degree
    out: dict = {}
    if degree > 2 * a.m + 1:
        return Form.zero(a.m, degree)
    for ka, ca in a._terms.items():
        for kb, cb in b._terms.items():
            sign, key = _merge(ka, kb)
            if not sign:
                continue
            term = ca * cb if sign > 0 else -(ca * cb)
            out[key] = out[key] + term if key in out else term
    return Form(a.m, degree, out)


def wedge_power(a: Form, n: int) -> Form:
    """``a ^ a ^ ... ^ a`` (``n`` factors); ``n = 0`` gives the constant 1."""
    out = Form.function(a.m, ONE)
    for _ in range(n):
        out = wedge(out, a)
    return out


def ext_d(a: Form) -> Form:
    """Exterior derivative, ``d(c dx_I) = sum_i (dc/df_i) df_i ^ dx_I``."""
    n = 2 * a.m + 1
    out: dict = {}
    for key, c in a._terms.items():
        for i in range(1, n + 1):
            if i in key:
                continue
            dc = diff(c, i)
            if isinstance(dc, Const) and dc.value == 0:
                continue
            sign, merged = _merge((i,), key)
            term = dc if sign > 0 else -dc
            out[merged] = out[merged] + term if merged in out else term
    return Form(a.m, a.degree + 1, out)


class HForm:
    """Algebra-valued form: ``parts[b]`` is the real form multiplying blade ``b``."""

    __slots__ = ("spec", "m", "degree", "parts")

    def __init__(self, spec: AlgebraSpec, parts):
        parts = tuple(parts)
        if len(parts) != spec.dim:
            raise ValueError(f"expected {spec.dim} parts, got {len(parts)}")
        m, degree = parts[0].m, parts[0].degree
        for p in parts:
            if p.degree != degree:
                raise DegreeMismatch("parts of an HForm must share one degree")
            if p.m != m:
                raise ValueError("parts of an HForm must share one chart")
        self.spec = spec
        self.m = m
        self.degree = degree
        self.parts = parts

    @classmethod
    def zero(cls, spec: AlgebraSpec, m: int, degree: int) -> "HForm":
        z = Form.zero(m, degree)
        return cls(spec, [z] * spec.dim)

    @classmethod
    def from_dict(cls, spec: AlgebraSpec, m: int, degree: int, parts: dict) -> "HForm":
        out = [Form.zero(m, degree)] * spec.dim
        for blade, form in parts.items():
            out[spec.blade(blade)] = form
        return cls(spec, out)

    @classmethod
    def from_hnum(cls, q: HNum, m: int) -> "HForm":
        """A 0-form valued in the algebra."""
        return cls(q.spec, [Form.function(m, c) for c in q.coeffs])

    def _check(self, other: "HForm"):
        if self.spec != other.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")
        if self.degree != other.degree:
            raise DegreeMismatch(f"cannot add a {self.degree}-form and a {other.degree}-form")

    def __add__(self, other: "HForm") -> "HForm":
        self._check(other)
        return HForm(self.spec, [a + b for a, b in zip(self.parts, other.parts)])

    def __sub__(self, other: "HForm") -> "HForm":
        self._check(other)
        return HForm(self.spec, [a - b for a, b in zip(self.parts, other.parts)])

    def __neg__(self) -> "HForm":
        return HForm(self.spec, [-a for a in self.parts])

    def __eq__(self, other):
        if not isinstance(other, HForm):
            return NotImplemented
        return self.spec == other.spec and self.parts == other.parts

    def __hash__(self):
        return hash((self.spec, self.parts))

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def nonzero_blades(self) -> list[str]:
        return [self.spec.names[i] for i, p in enumerate(self.parts) if not p.is_zero()]

    def to_text(self) -> str:
        pieces = []
        for i, p in enumerate(self.parts):
            if p.is_zero():
                continue
            name = self.spec.names[i]
            pieces.append(p.to_text() if i == 0 else f"{name}*({p.to_text()})")
        return " + ".join(pieces) or "0"

    def __repr__(self):
        return f"HForm({self.spec.backend}, m={self.m}, degree={self.degree}, {self.to_text()!r})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "parts": {
                self.spec.names[i]: p.to_json() for i, p in enumerate(self.parts) if not p.is_zero()
            },
        }


def _accumulate(spec, m, degree, pairs):
    """Sum signed forms into blades: ``pairs`` yields ``(sign, blade, form)``."""
    buckets: list[dict] = [{} for _ in range(spec.dim)]
    for sign, blade, form in pairs:
        bucket = buckets[blade]
        for k, c in form._terms.items():
            term = c if sign > 0 else -c
            bucket[k] = bucket[k] + term if k in bucket else term
    return HForm(spec, [Form(m, degree, b) for b in buckets])


def hwedge(x: HForm, y: HForm) -> HForm:
    """Algebra product on blades combined with the wedge on form parts (order kept)."""
    if x.spec != y.spec:
        raise SpecMismatch(f"{x.spec} vs {y.spec}")
    spec = x.spec

    def pairs():
        for a, fa in enumerate(x.parts):
            if fa.is_zero():
                continue
            for b, fb in enumerate(y.parts):
                if fb.is_zero():
                    continue
                yield spec.signs[a][b], spec.products[a][b], _wedge_raw(fa, fb)

    return _accumulate(spec, x.m, x.degree + y.degree, pairs())


def _wedge_raw(a: Form, b: Form) -> Form:
    # unsimplified product; _accumulate canonicalizes once per blade
    degree = a.degree + b.degree
    out: dict = {}
    if degree > 2 * a.m + 1:
        return Form.zero(a.m, degree)
    for ka, ca in a._terms.items():
        for kb, cb in b._terms.items():
            sign, key = _merge(ka, kb)
            if not sign:
                continue
            term = ca * cb if sign > 0 else -(ca * cb)
            out[key] = out[key] + term if key in out else term
    return Form._raw(a.m, degree, out)


def scalar_act(q: HNum, x: HForm, side: str = "left") -> HForm:
    """``q * X`` (``side="left"``) or ``X * q`` (``side="right"``) for a 0-form ``q``."""
    if q.spec != x.spec:
        raise SpecMismatch(f"{q.spec} vs {x.spec}")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    spec = x.spec
    coeffs = [(a, as_expr(c)) for a, c in enumerate(q.coeffs) if not _zero_coeff(c)]

    def pairs():
        for a, c in coeffs:
            for b, fb in enumerate(x.parts):
                if fb.is_zero():
                    continue
                scaled = Form._raw(x.m, x.degree, {k: c * v for k, v in fb._terms.items()})
                if side == "left":
                    yield spec.signs[a][b], spec.products[a][b], scaled
                else:
                    yield spec.signs[b][a], spec.products[b][a], scaled

    return _accumulate(spec, x.m, x.degree, pairs())


def _zero_coeff(c) -> bool:
    if isinstance(c, Expr):
        return isinstance(c, Const) and c.value == 0
    return c == 0


def hcomponent(x: HForm, blade) -> Form:
    return x.parts[x.spec.blade(blade)]


def hreal(x: HForm) -> Form:
    return x.parts[0]


def hext_d(x: HForm) -> HForm:
    """Exterior derivative applied blade by blade."""
    return HForm(x.spec, [ext_d(p) for p in x.parts])
