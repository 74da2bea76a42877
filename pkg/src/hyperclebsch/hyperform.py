"""Hypercomplexification of a one-form in Clebsch form.

With ``2m+1`` potentials ``f1..f_{2m+1}`` and units ``e1..em``::

    A  = f1 df2 + f3 df4 + ... + f_{2m-1} df_{2m} + df_{2m+1}
    Q  = f_{2m+1} + e1 f1 + e2 f3 + ... + em f_{2m-1}
    u  = e1 f2 + e2 f4 + ... + em f_{2m}
    F  = Q exp(-u),     Fbar = conj(Q) exp(u)

The duals are the unit components of ``B``, which comes in two variants:

``plain``
    ``dQ - Q du``.  The exponentials are treated as cancelling, which is
    only legitimate when the algebra is commutative.
``conjugated``
    ``exp(u) * [(dQ - Q du) exp(-u)]``, i.e. the closed-form ``dF`` taken
    literally and multiplied by ``exp(u)`` on the left.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .extcalc import Form, HForm, ext_d, hcomponent, hreal, scalar_act
from .hyperalg import AlgebraSpec, HNum, default_algebra, exp_pure, hconj, hmul
from .symexpr import Const, Expr, as_expr, parse_expr, symbols

__all__ = [
    "PatternUnderspecified",
    "PotentialSet",
    "DualBundle",
    "build_A",
    "build_u",
    "build_Q",
    "build_F",
    "build_Fbar",
    "build_dQ",
    "build_du",
    "build_dF_closed",
    "build_B",
    "extract_duals",
    "printed_duals",
    "B_VARIANTS",
]

B_VARIANTS = ("plain", "conjugated")


class PatternUnderspecified(ValueError):
    pass


@dataclass(frozen=True)
class PotentialSet:
    """The ``2m+1`` potentials; ``fs[i]`` is ``f_{i+1}``."""

    m: int
    fs: tuple

    def __post_init__(self):
        fs = tuple(as_expr(f) for f in self.fs)
        if len(fs) != 2 * self.m + 1:
            raise ValueError(f"m={self.m} needs {2 * self.m + 1} potentials, got {len(fs)}")
        object.__setattr__(self, "fs", fs)

    @classmethod
    def generic(cls, m: int) -> "PotentialSet":
        return cls(m, tuple(symbols(2 * m + 1)))

    @classmethod
    def parse(cls, m: int, texts) -> "PotentialSet":
        if isinstance(texts, str):
            texts = texts.split(",")
        return cls(m, tuple(parse_expr(t.strip(), m) for t in texts))

    def f(self, i: int) -> Expr:
        """Potential ``f_i`` (1-based)."""
        return self.fs[i - 1]

    def with_zeros(self, *indices: int) -> "PotentialSet":
        """Copy with ``f_i = 0`` for each 1-based index given."""
        fs = list(self.fs)
        for i in indices:
            fs[i - 1] = Const(0)
        return PotentialSet(self.m, tuple(fs))

    def is_generic(self) -> bool:
        return self.fs == tuple(symbols(2 * self.m + 1))


@dataclass(frozen=True)
class DualBundle:
    A: Form
    duals: tuple
    residue: dict = field(default_factory=dict)

    def dual(self, k: int) -> Form:
        """``A~k`` (1-based)."""
        return self.duals[k - 1]


def _algebra(P: PotentialSet, algebra: AlgebraSpec | None) -> AlgebraSpec:
    algebra = algebra or default_algebra(P.m)
    if algebra.m != P.m:
        raise ValueError(f"algebra has {algebra.m} units but the potentials need m={P.m}")
    return algebra


def _d(P: PotentialSet, i: int) -> Form:
    return ext_d(Form.function(P.m, P.f(i)))


def build_A(P: PotentialSet) -> Form:
    m = P.m
    out = _d(P, 2 * m + 1)
    for i in range(1, m + 1):
        out = out + _d(P, 2 * i) * P.f(2 * i - 1)
    return out


def build_u(P: PotentialSet, algebra: AlgebraSpec | None = None) -> HNum:
    algebra = _algebra(P, algebra)
    return HNum.from_dict(algebra, {i: P.f(2 * i) for i in algebra.generators()})


def build_Q(P: PotentialSet, algebra: AlgebraSpec | None = None) -> HNum:
    algebra = _algebra(P, algebra)
    parts = {0: P.f(2 * P.m + 1)}
    parts.update({i: P.f(2 * i - 1) for i in algebra.generators()})
    return HNum.from_dict(algebra, parts)


def build_F(P: PotentialSet, algebra: AlgebraSpec | None = None) -> HNum:
    """``Q exp(-u)``."""
    algebra = _algebra(P, algebra)
    return hmul(build_Q(P, algebra), exp_pure(-build_u(P, algebra)))


def build_Fbar(P: PotentialSet, algebra: AlgebraSpec | None = None) -> HNum:
    """``conj(Q) exp(u)``, factors in that order."""
    algebra = _algebra(P, algebra)
    return hmul(hconj(build_Q(P, algebra)), exp_pure(build_u(P, algebra)))


def build_dQ(P: PotentialSet, algebra: AlgebraSpec | None = None) -> HForm:
    algebra = _algebra(P, algebra)
    parts = {0: _d(P, 2 * P.m + 1)}
    parts.update({i: _d(P, 2 * i - 1) for i in algebra.generators()})
    return HForm.from_dict(algebra, P.m, 1, parts)


def build_du(P: PotentialSet, algebra: AlgebraSpec | None = None) -> HForm:
    algebra = _algebra(P, algebra)
    parts = {i: _d(P, 2 * i) for i in algebra.generators()}
    return HForm.from_dict(algebra, P.m, 1, parts)


def _inner(P: PotentialSet, algebra: AlgebraSpec) -> HForm:
    """``dQ - Q du``."""
    Q = build_Q(P, algebra)
    return build_dQ(P, algebra) - scalar_act(Q, build_du(P, algebra), "left")


def build_dF_closed(P: PotentialSet, algebra: AlgebraSpec | None = None) -> HForm:
    """Closed-form ``dF = (dQ - Q du) exp(-u)``.

    This is the formula as written, with ``d exp(-u)`` taken to be
    ``-du exp(-u)``.  That only matches the true derivative of ``F`` when
    ``u`` and ``du`` commute; see ``claims.check_dF_consistency``.
    """
    algebra = _algebra(P, algebra)
    return scalar_act(exp_pure(-build_u(P, algebra)), _inner(P, algebra), "right")


def build_B(P: PotentialSet, variant: str = "plain", algebra: AlgebraSpec | None = None) -> HForm:
    algebra = _algebra(P, algebra)
    if variant == "plain":
        return _inner(P, algebra)
    if variant == "conjugated":
        return scalar_act(exp_pure(build_u(P, algebra)), build_dF_closed(P, algebra), "left")
    raise ValueError(f"unknown variant {variant!r}; expected one of {B_VARIANTS}")


def extract_duals(B: HForm) -> DualBundle:
    if B.degree != 1:
        raise ValueError("duals are extracted from a one-form")
    spec = B.spec
    duals = tuple(hcomponent(B, i) for i in spec.generators())
    residue = {
        spec.names[i]: p
        for i, p in enumerate(B.parts)
        if spec.grades[i] >= 2 and not p.is_zero()
    }
    return DualBundle(hreal(B), duals, residue)


# Printed dual formulas, as (sign, coefficient potential or None, differential index).
# None stands for a bare differential.  "top" is replaced by 2m+1.
_PRINTED = {
    1: [
        [(1, None, 1), (-1, "top", 2)],
    ],
    3: [
        [(1, None, 1), (-1, "top", 2), (-1, 3, 6), (1, 5, 4)],
        [(1, None, 3), (-1, "top", 4), (1, 1, 6), (-1, 5, 2)],
        [(1, None, 5), (-1, "top", 6), (-1, 1, 4), (1, 3, 2)],
    ],
    # Only the first two duals are written out for eight units, and the
    # second carries an ambiguous "+ -" before its last term (read as "-").
    7: [
        [
            (1, None, 1), (-1, "top", 2), (-1, 3, 6), (1, 5, 4),
            (-1, 7, 10), (1, 9, 8), (-1, 11, 14), (1, 13, 12),
        ],
        [
            (1, None, 3), (-1, "top", 4), (1, 1, 6), (-1, 5, 2),
            (1, 7, 12), (-1, 9, 14), (1, 11, 8), (-1, 13, 10),
        ],
    ],
}


def _first_dual_pattern(m: int):
    terms = [(1, None, 1), (-1, "top", 2)]
    a = 3
    while a + 3 <= 2 * m:
        terms += [(-1, a, a + 3), (1, a + 2, a + 1)]
        a += 4
    return terms


def printed_duals(P: PotentialSet, strict: bool = False) -> list:
    """Transcribed dual formulas in terms of the potentials of ``P``.

    Complete for ``m`` in {1, 3}.  Elsewhere only some duals are written
    down; missing entries are ``None``, and ``strict=True`` raises
    :class:`PatternUnderspecified` instead.
    """
    m = P.m
    if m not in (1, 3) and strict:
        raise PatternUnderspecified(f"no complete dual formulas for m={m}")
    table = _PRINTED.get(m) or [_first_dual_pattern(m)]
    out = []
    for k in range(m):
        if k >= len(table):
            out.append(None)
            continue
        form = Form.zero(m, 1)
        for sign, coeff, i in table[k]:
            term = _d(P, i)
            if coeff is not None:
                term = term * P.f(2 * m + 1 if coeff == "top" else coeff)
            form = form + term if sign > 0 else form - term
        out.append(form)
    return out
