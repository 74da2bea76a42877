"""Canonical forms for scalar expressions.

Two layers:

* :class:`Poly` -- expanded polynomials with exact rational coefficients.
  Variables are coordinate indices (``int``) or opaque :class:`Atom` objects
  standing for ``sin(a)``, ``cos(a)`` and ``sqrt(a)``.
* :class:`RForm` -- a numerator ``Poly`` over a product of monic denominator
  factors.  Sums are taken over a common denominator, so an ``RForm`` is zero
  exactly when its numerator is.

Numerators are kept reduced by two rewrites that hold wherever the expression
is defined: ``sin(a)^2 -> 1 - cos(a)^2`` and ``sqrt(a)^2 -> a``.  They make
exponential identities such as ``cos(r)^2 + r^2 (sin(r)/r)^2 = 1`` decidable.
Anything not caught by them is simply left unreduced, which can only turn an
exact answer into a numeric one, never into a wrong one.

:func:`poly_normalize` is the strict polynomial view used by ``is_zero``: it
returns :data:`NOT_POLYNOMIAL` as soon as an atom or a non-constant
denominator shows up.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key, lru_cache

from .expr import (
    ONE,
    ZERO,
    Add,
    Const,
    Div,
    Expr,
    Func,
    Mul,
    Neg,
    Pow,
    Sub,
    Sym,
    as_expr,
)

__all__ = [
    "Atom",
    "Poly",
    "RForm",
    "NOT_POLYNOMIAL",
    "Undefined",
    "normalize",
    "poly_normalize",
    "simplify",
    "exact_zero",
    "to_expr",
]


class Undefined(ArithmeticError):
    """Division by an identically-zero expression."""


class _NotPolynomial:
    __slots__ = ()

    def __repr__(self):
        return "NotPolynomial"

    def __bool__(self):
        return False


NOT_POLYNOMIAL = _NotPolynomial()


class Atom:
    """An unexpanded ``sin``, ``cos`` or ``sqrt`` of a canonical argument."""

    __slots__ = ("kind", "arg", "key", "sortkey", "_tree", "_hash")

    def __init__(self, kind: str, arg: "RForm"):
        self.kind = kind
        self.arg = arg
        self.key = arg.key
        self.sortkey = (1, kind, self.key)
        self._tree = None
        self._hash = hash((kind, self.key))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (
            isinstance(other, Atom)
            and self._hash == other._hash
            and self.kind == other.kind
            and self.key == other.key
        )

    def __repr__(self):
        return f"{self.kind}({self.key})"

    @property
    def tree(self) -> Expr:
        if self._tree is None:
            self._tree = Func(self.kind, to_expr(self.arg))
        return self._tree


def _var_key(v):
    return (0, v, "") if isinstance(v, int) else v.sortkey


def _mono_key(mono):
    return tuple((_var_key(v), e) for v, e in mono)


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda t: _var_key(t[0])))


def _mono_div(a, b):
    """``a / b`` when ``b`` divides ``a``, else None."""
    exps = dict(a)
    for v, e in b:
        have = exps.get(v, 0)
        if have < e:
            return None
        exps[v] = have - e
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda t: _var_key(t[0])))


def _degree(mono):
    return sum(e for _, e in mono)


def _grlex_cmp(a, b):
    da, db = _degree(a), _degree(b)
    if da != db:
        return 1 if da > db else -1
    for (va, ea), (vb, eb) in zip(a, b):
        ka, kb = _var_key(va), _var_key(vb)
        if ka != kb:
            return 1 if ka < kb else -1
        if ea != eb:
            return 1 if ea > eb else -1
    return (len(a) > len(b)) - (len(a) < len(b))


_grlex = cmp_to_key(_grlex_cmp)


def _mono_text(mono) -> str:
    parts = []
    for v, e in mono:
        name = f"f{v}" if isinstance(v, int) else f"{v.kind}[{v.key}]"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class Poly:
    """Expanded polynomial; ``terms`` maps sorted monomials to Fractions."""

    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self._key = None
        self._hash = None

    @classmethod
    def const(cls, value) -> "Poly":
        return cls({(): Fraction(value)})

    @classmethod
    def var(cls, v) -> "Poly":
        return cls({((v, 1),): Fraction(1)})

    @property
    def key(self) -> str:
        if self._key is None:
            items = sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))
            self._key = " + ".join(f"{c}*{_mono_text(mono)}" for mono, c in items) or "0"
        return self._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __repr__(self):
        return f"Poly({self.key})"

    def __str__(self):
        from .expr import to_text

        return to_text(poly_to_expr(self))

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self):
        """The value if this is a constant polynomial, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def has_atoms(self) -> bool:
        return any(not isinstance(v, int) for mono in self.terms for v, _ in mono)

    def monomials(self):
        """``[(exponents, coeff)]`` with exponents as ``{index: power}``, sorted."""
        items = sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)
        return [(dict(mono), c) for mono, c in items]

    def leading(self):
        mono = max(self.terms, key=_grlex)
        return mono, self.terms[mono]

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        return Poly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = _mono_mul(ka, kb)
                out[k] = out.get(k, 0) + va * vb
        return Poly(out)

    def pow(self, n: int) -> "Poly":
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = _reduce(result * base)
            n >>= 1
            if n:
                base = _reduce(base * base)
        return result


def _exact_div(num: Poly, factor: Poly):
    """Quotient if ``factor`` divides ``num`` in the free polynomial ring."""
    lead_mono, lead_c = factor.leading()
    quotient = {}
    rest = num
    for _ in range(100000):
        if rest.is_zero():
            return Poly(quotient)
        mono, c = rest.leading()
        q = _mono_div(mono, lead_mono)
        if q is None:
            return None
        coeff = c / lead_c
        quotient[q] = quotient.get(q, 0) + coeff
        rest = rest - Poly({q: coeff}) * factor
    return None


@lru_cache(maxsize=200000)
def _reduce_mono(mono) -> Poly:
    for pos, (v, e) in enumerate(mono):
        if isinstance(v, int) or e < 2:
            continue
        if v.kind == "sqrt" and not v.arg.den:
            rest = mono[:pos] + (((v, e % 2),) if e % 2 else ()) + mono[pos + 1 :]
            return _reduce(Poly({rest: Fraction(1)}) * v.arg.num.pow(e // 2))
        if v.kind == "sin":
            rest = mono[:pos] + (((v, e - 2),) if e > 2 else ()) + mono[pos + 1 :]
            cos2 = Poly.var(_atom("cos", v.arg)).pow(2)
            return _reduce(Poly({rest: Fraction(1)}) * (Poly.const(1) - cos2))
    return Poly({mono: Fraction(1)})


def _reduce(p: Poly) -> Poly:
    out = {}
    for mono, c in p.terms.items():
        if all(isinstance(v, int) or e < 2 or v.kind == "cos" for v, e in mono):
            out[mono] = out.get(mono, 0) + c
            continue
        for k, v in _reduce_mono(mono).terms.items():
            out[k] = out.get(k, 0) + c * v
    return Poly(out)


class RForm:
    """``num / prod(factor**k for factor, k in den)`` with monic factors."""

    __slots__ = ("num", "den", "_key", "_hash")

    def __init__(self, num: Poly, den=()):
        self.num = num
        self.den = tuple(den)
        self._key = None
        self._hash = None

    @property
    def key(self) -> str:
        if self._key is None:
            if self.den:
                dens = ";".join(f"({f.key})^{k}" for f, k in self.den)
                self._key = f"{self.num.key} / {dens}"
            else:
                self._key = self.num.key
        return self._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __eq__(self, other):
        return isinstance(other, RForm) and self.key == other.key

    def __repr__(self):
        return f"RForm({self.key})"

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den and not self.num.has_atoms()

    def constant(self):
        return None if self.den else self.num.constant()

    def __add__(self, other: "RForm") -> "RForm":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        da, db = dict(self.den), dict(other.den)
        if da == db:
            return _make(_reduce(self.num + other.num), da)
        common = {f: max(da.get(f, 0), db.get(f, 0)) for f in set(da) | set(db)}
        na = _with_factors(self.num, {f: k - da.get(f, 0) for f, k in common.items()})
        nb = _with_factors(other.num, {f: k - db.get(f, 0) for f, k in common.items()})
        return _make(na + nb, common)

    def __neg__(self) -> "RForm":
        return RForm(-self.num, self.den)

    def __sub__(self, other: "RForm") -> "RForm":
        return self + (-other)

    def __mul__(self, other: "RForm") -> "RForm":
        if self.is_zero() or other.is_zero():
            return _ZERO
        den = dict(self.den)
        for f, k in other.den:
            den[f] = den.get(f, 0) + k
        return _make(_reduce(self.num * other.num), den)

    def inverse(self) -> "RForm":
        if self.num.is_zero():
            raise Undefined("division by zero")
        c = self.num.constant()
        num = _with_factors(Poly.const(1), dict(self.den))
        if c is not None:
            return _make(num.scale(1 / c), {})
        lead = self.num.leading()[1]
        factor = self.num.scale(1 / lead)
        return _make(num.scale(1 / lead), {factor: 1})

    def pow(self, n: int) -> "RForm":
        if n < 0:
            return self.inverse().pow(-n)
        return _make(self.num.pow(n), {f: k * n for f, k in self.den})


def _with_factors(num: Poly, exps) -> Poly:
    for f, k in exps.items():
        if k:
            num = _reduce(num * f.pow(k))
    return num


def _single_sqrt(factor: Poly):
    if len(factor.terms) != 1:
        return None
    (mono, c), = factor.terms.items()
    if c != 1 or len(mono) != 1:
        return None
    v, e = mono[0]
    if isinstance(v, Atom) and v.kind == "sqrt" and e == 1 and not v.arg.den:
        return v
    return None


def _make(num: Poly, den) -> RForm:
    if num.is_zero():
        return _ZERO
    den = {f: k for f, k in den.items() if k}
    for f in list(den):
        q = _single_sqrt(f)
        if q is not None and den[f] >= 2:
            k = den.pop(f)
            if k % 2:
                den[f] = 1
            inner = q.arg.num
            lead = inner.leading()[1]
            monic = inner.scale(1 / lead)
            num = num.scale(1 / lead ** (k // 2))
            den[monic] = den.get(monic, 0) + k // 2
    for f in list(den):
        c = f.constant()
        if c is not None:
            num = num.scale(1 / c ** den.pop(f))
            continue
        while den[f]:
            q = _exact_div(num, f)
            if q is None:
                break
            num = _reduce(q)
            den[f] -= 1
        if not den[f]:
            del den[f]
    return RForm(num, sorted(den.items(), key=lambda t: t[0].key))


_ZERO = RForm(Poly())
_ONE = RForm(Poly.const(1))


@lru_cache(maxsize=4096)
def _atom(kind: str, arg: RForm) -> Atom:
    return Atom(kind, arg)


def _atom_form(kind: str, arg: RForm) -> RForm:
    if arg.is_zero():
        return _ONE if kind == "cos" else _ZERO
    c = arg.constant()
    if kind == "sqrt" and c is not None and c >= 0:
        from .expr import sqrt as _sqrt

        folded = _sqrt(Const(c))
        if isinstance(folded, Const):
            return RForm(Poly.const(folded.value))
    if kind in ("sin", "cos") and arg.num.leading()[1] < 0:
        flipped = RForm(Poly.var(_atom(kind, -arg)))
        return -flipped if kind == "sin" else flipped
    return RForm(Poly.var(_atom(kind, arg)))


@lru_cache(maxsize=200000)
def normalize(e: Expr) -> RForm:
    """Canonical rational form of ``e``; raises :class:`Undefined` on x/0."""
    if isinstance(e, Const):
        return RForm(Poly.const(e.value)) if e.value else _ZERO
    if isinstance(e, Sym):
        return RForm(Poly.var(e.index))
    if isinstance(e, Add):
        return normalize(e.left) + normalize(e.right)
    if isinstance(e, Sub):
        return normalize(e.left) - normalize(e.right)
    if isinstance(e, Neg):
        return -normalize(e.arg)
    if isinstance(e, Mul):
        return normalize(e.left) * normalize(e.right)
    if isinstance(e, Div):
        return normalize(e.left) * normalize(e.right).inverse()
    if isinstance(e, Pow):
        return normalize(e.base).pow(e.exponent)
    if isinstance(e, Func):
        return _atom_form(e.name, normalize(e.arg))
    raise TypeError(type(e))


@lru_cache(maxsize=200000)
def _polynomial_tree(e: Expr) -> bool:
    if isinstance(e, Func):
        return False
    if isinstance(e, Div):
        if not _polynomial_tree(e.left):
            return False
        try:
            den = normalize(e.right)
        except Undefined:
            return False
        c = den.constant()
        return c is not None and c != 0
    if isinstance(e, Pow) and e.exponent < 0:
        return False
    return all(_polynomial_tree(a) for a in e.args)


def poly_normalize(e: Expr):
    """Canonical :class:`Poly` of ``e``, or :data:`NOT_POLYNOMIAL`.

    Any ``sin``/``cos``/``sqrt`` node or division by a non-constant makes the
    result :data:`NOT_POLYNOMIAL`, even when the expression happens to
    simplify to a polynomial.
    """
    if not _polynomial_tree(e):
        return NOT_POLYNOMIAL
    return normalize(e).num


def exact_zero(e: Expr) -> bool:
    """True when ``e`` reduces to zero under the canonical rewrites."""
    try:
        return normalize(as_expr(e)).is_zero()
    except Undefined:
        return False


def _var_expr(v) -> Expr:
    return Sym(v) if isinstance(v, int) else v.tree


def _sum(terms: list[Expr]) -> Expr:
    if not terms:
        return ZERO
    if len(terms) <= 64:
        out = terms[0]
        for t in terms[1:]:
            out = out + t
        return out
    mid = len(terms) // 2
    return _sum(terms[:mid]) + _sum(terms[mid:])


def _mono_expr(mono) -> Expr:
    out = None
    for v, e in mono:
        factor = _var_expr(v) ** e
        out = factor if out is None else out * factor
    return ONE if out is None else out


def poly_to_expr(p: Poly) -> Expr:
    items = sorted(p.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)
    terms = []
    for mono, c in items:
        body = _mono_expr(mono)
        if c == 1:
            terms.append(body)
        elif c == -1:
            terms.append(-body)
        else:
            terms.append(Const(c) * body)
    return _sum(terms)


def to_expr(form) -> Expr:
    """Rebuild a tree from a :class:`Poly` or :class:`RForm`."""
    if isinstance(form, Poly):
        return poly_to_expr(form)
    num = poly_to_expr(form.num)
    if not form.den:
        return num
    den = None
    for f, k in form.den:
        factor = poly_to_expr(f) ** k
        den = factor if den is None else den * factor
    return num / den


@lru_cache(maxsize=200000)
def simplify(e: Expr) -> Expr:
    """Canonical tree for ``e`` (``e`` itself if it divides by zero)."""
    try:
        return to_expr(normalize(e))
    except Undefined:
        return e
