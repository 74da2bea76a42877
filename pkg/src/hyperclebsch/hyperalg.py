"""Hypercomplex algebras with ``m`` anticommuting units squaring to ``-1``.

Two families are provided:

``cayley_dickson``
    C, H, O (``m`` = 1, 3, 7), built by doubling with
    ``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))``.  Basis ``1, e1..em``.
``clifford``
    Cl(0, m) for ``1 <= m <= 8``, basis blades ordered by grade then
    lexicographically: ``1, e1, .., em, e12, e13, ..``.

In both, index ``i`` of the basis is the generator ``e_i`` for ``1 <= i <= m``.

Elements (:class:`HNum`) hold one coefficient per basis element.  The
coefficients can be anything supporting ``+ - *``: ints, Fractions, floats or
:class:`~hyperclebsch.symexpr.Expr` trees.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations

from .symexpr import Const, Expr, exact_zero
from .symexpr import cos as _scos
from .symexpr import sin as _ssin
from .symexpr import sqrt as _ssqrt

__all__ = [
    "AlgebraSpec",
    "HNum",
    "UnsupportedDimension",
    "SpecMismatch",
    "NotPureImaginary",
    "UnknownBlade",
    "make_algebra",
    "default_algebra",
    "hmul",
    "hconj",
    "exp_pure",
    "component",
    "real_part",
    "norm2",
    "table_rows",
]

BACKENDS = ("cayley_dickson", "clifford")


class UnsupportedDimension(ValueError):
    pass


class SpecMismatch(ValueError):
    pass


class NotPureImaginary(ValueError):
    pass


class UnknownBlade(KeyError):
    pass


class AlgebraSpec:
    """Multiplication table of one algebra; build it with :func:`make_algebra`."""

    __slots__ = ("backend", "m", "dim", "names", "grades", "signs", "products", "_index")

    def __init__(self, backend, m, names, grades, signs, products):
        self.backend = backend
        self.m = m
        self.dim = len(names)
        self.names = tuple(names)
        self.grades = tuple(grades)
        self.signs = signs
        self.products = products
        self._index = {name: i for i, name in enumerate(names)}

    def __repr__(self):
        return f"AlgebraSpec({self.backend!r}, m={self.m}, dim={self.dim})"

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraSpec)
            and self.backend == other.backend
            and self.m == other.m
        )

    def __hash__(self):
        return hash((self.backend, self.m))

    @property
    def associative(self) -> bool:
        return self.backend == "clifford" or self.m <= 3

    def table(self, a, b) -> tuple[int, int]:
        """``(sign, blade)`` with ``basis[a] * basis[b] == sign * basis[blade]``."""
        a, b = self.blade(a), self.blade(b)
        return self.signs[a][b], self.products[a][b]

    def blade(self, b) -> int:
        """Index of a blade given by index or by name (``"1"``, ``"e2"``, ``"e13"``)."""
        if isinstance(b, str):
            try:
                return self._index[b]
            except KeyError:
                raise UnknownBlade(b) from None
        if isinstance(b, int) and 0 <= b < self.dim:
            return b
        raise UnknownBlade(b)

    def generators(self) -> range:
        return range(1, self.m + 1)


def _cd_mul(i: int, j: int, level: int) -> tuple[int, int]:
    if level == 0:
        return 1, 0
    half = 1 << (level - 1)
    if i < half and j < half:
        return _cd_mul(i, j, level - 1)
    if i < half:
        s, k = _cd_mul(j - half, i, level - 1)
        return s, k + half
    if j < half:
        s, k = _cd_mul(i - half, j, level - 1)
        return (s if j == 0 else -s), k + half
    jj = j - half
    s, k = _cd_mul(jj, i - half, level - 1)
    return (-s if jj == 0 else s), k


def _reorder_sign(a: int, b: int) -> int:
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def make_algebra(backend: str, m: int) -> AlgebraSpec:
    """Build (and cache) the algebra for ``backend`` with ``m`` units."""
    if backend == "cayley_dickson":
        if m not in (1, 3, 7):
            raise UnsupportedDimension(f"cayley_dickson needs m in {{1, 3, 7}}, got {m}")
        level = (m + 1).bit_length() - 1
        dim = m + 1
        names = ["1"] + [f"e{i}" for i in range(1, dim)]
        grades = [0] + [1] * m
        signs, products = [], []
        for i in range(dim):
            row = [_cd_mul(i, j, level) for j in range(dim)]
            signs.append(tuple(s for s, _ in row))
            products.append(tuple(k for _, k in row))
        return AlgebraSpec(backend, m, names, grades, tuple(signs), tuple(products))
    if backend == "clifford":
        if not 1 <= m <= 8:
            raise UnsupportedDimension(f"clifford needs 1 <= m <= 8, got {m}")
        masks = [0]
        for grade in range(1, m + 1):
            for combo in combinations(range(m), grade):
                masks.append(sum(1 << g for g in combo))
        position = {mask: i for i, mask in enumerate(masks)}
        names = ["1"] + [
            "e" + "".join(str(g + 1) for g in range(m) if mask >> g & 1) for mask in masks[1:]
        ]
        grades = [bin(mask).count("1") for mask in masks]
        signs, products = [], []
        for a in masks:
            srow, prow = [], []
            for b in masks:
                s = _reorder_sign(a, b)
                if bin(a & b).count("1") & 1:
                    s = -s
                srow.append(s)
                prow.append(position[a ^ b])
            signs.append(tuple(srow))
            products.append(tuple(prow))
        return AlgebraSpec(backend, m, names, grades, tuple(signs), tuple(products))
    raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")


def default_algebra(m: int) -> AlgebraSpec:
    """Cayley-Dickson when ``m`` allows it, Clifford otherwise."""
    return make_algebra("cayley_dickson" if m in (1, 3, 7) else "clifford", m)


def _is_zero(c) -> bool:
    if isinstance(c, Expr):
        return exact_zero(c)
    return c == 0


def _nonzero(c) -> bool:
    # cheap literal test; exact cancellation is left to the consumer
    if isinstance(c, Expr):
        return not (isinstance(c, Const) and c.value == 0)
    return c != 0


class HNum:
    """An algebra element; ``coeffs[i]`` multiplies basis blade ``i``."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: AlgebraSpec, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != spec.dim:
            raise ValueError(f"expected {spec.dim} coefficients, got {len(coeffs)}")
        self.spec = spec
        self.coeffs = coeffs

    @classmethod
    def zero(cls, spec: AlgebraSpec) -> "HNum":
        return cls(spec, [0] * spec.dim)

    @classmethod
    def scalar(cls, spec: AlgebraSpec, value) -> "HNum":
        return cls(spec, [value] + [0] * (spec.dim - 1))

    @classmethod
    def basis(cls, spec: AlgebraSpec, blade, value=1) -> "HNum":
        coeffs = [0] * spec.dim
        coeffs[spec.blade(blade)] = value
        return cls(spec, coeffs)

    @classmethod
    def from_dict(cls, spec: AlgebraSpec, parts: dict) -> "HNum":
        coeffs = [0] * spec.dim
        for blade, value in parts.items():
            coeffs[spec.blade(blade)] = value
        return cls(spec, coeffs)

    def __repr__(self):
        terms = [
            f"{c}" if i == 0 else f"({c})*{self.spec.names[i]}"
            for i, c in enumerate(self.coeffs)
            if _nonzero(c)
        ]
        return "HNum(" + (" + ".join(terms) or "0") + ")"

    def __getitem__(self, blade):
        return self.coeffs[self.spec.blade(blade)]

    def _check(self, other: "HNum"):
        if self.spec != other.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other):
        if not isinstance(other, HNum):
            other = HNum.scalar(self.spec, other)
        self._check(other)
        return HNum(self.spec, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return HNum(self.spec, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HNum):
            return hmul(self, other)
        return HNum(self.spec, [c * other for c in self.coeffs])

    def __rmul__(self, other):
        return HNum(self.spec, [other * c for c in self.coeffs])

    def conj(self) -> "HNum":
        return hconj(self)

    def map(self, fn) -> "HNum":
        return HNum(self.spec, [fn(c) for c in self.coeffs])


def hmul(x: HNum, y: HNum) -> HNum:
    """Algebra product, expanded bilinearly through the table."""
    x._check(y)
    spec = x.spec
    out = [0] * spec.dim
    ys = [(b, c) for b, c in enumerate(y.coeffs) if _nonzero(c)]
    for a, ca in enumerate(x.coeffs):
        if not _nonzero(ca):
            continue
        srow, prow = spec.signs[a], spec.products[a]
        for b, cb in ys:
            term = ca * cb
            k = prow[b]
            out[k] = out[k] + term if srow[b] > 0 else out[k] - term
    return HNum(spec, out)


def _conj_sign(spec: AlgebraSpec, blade: int) -> int:
    g = spec.grades[blade]
    return -1 if (g * (g + 1) // 2) & 1 else 1


def hconj(x: HNum) -> HNum:
    """Conjugation: units negated; Clifford blades of grade g get (-1)^(g(g+1)/2)."""
    spec = x.spec
    return HNum(
        spec,
        [c if _conj_sign(spec, i) > 0 else -c for i, c in enumerate(x.coeffs)],
    )


def exp_pure(v: HNum) -> HNum:
    """``exp(v)`` for ``v`` in the span of the units: ``cos r + (sin r / r) v``."""
    spec = v.spec
    for i, c in enumerate(v.coeffs):
        if spec.grades[i] != 1 and not _is_zero(c):
            raise NotPureImaginary(f"coefficient on {spec.names[i]} is {c}")
    parts = [(i, c) for i in spec.generators() if _nonzero(c := v.coeffs[i])]
    if not parts:
        return HNum.scalar(spec, 1)
    if any(isinstance(c, Expr) for _, c in parts):
        if len(parts) == 1:
            (i, c), = parts
            out = [0] * spec.dim
            out[0], out[i] = _scos(c), _ssin(c)
            return HNum(spec, out)
        r = _ssqrt(sum((c * c for _, c in parts[1:]), parts[0][1] * parts[0][1]))
        ratio = _ssin(r) / r
        out = [0] * spec.dim
        out[0] = _scos(r)
        for i, c in parts:
            out[i] = ratio * c
        return HNum(spec, out)
    r = math.sqrt(sum(float(c) ** 2 for _, c in parts))
    if r == 0.0:
        return HNum.scalar(spec, 1.0)
    ratio = math.sin(r) / r
    out = [0.0] * spec.dim
    out[0] = math.cos(r)
    for i, c in parts:
        out[i] = ratio * float(c)
    return HNum(spec, out)


def component(x: HNum, blade):
    return x.coeffs[x.spec.blade(blade)]


def real_part(x: HNum):
    return x.coeffs[0]


def norm2(x: HNum):
    """``real_part(x * conj(x))``."""
    return real_part(hmul(x, hconj(x)))


def _signed_name(spec: AlgebraSpec, sign: int, blade: int) -> str:
    return ("" if sign > 0 else "-") + spec.names[blade]


def table_rows(spec: AlgebraSpec) -> list[list[str]]:
    """Multiplication table as signed blade names, row ``a`` times column ``b``."""
    return [
        [_signed_name(spec, spec.signs[a][b], spec.products[a][b]) for b in range(spec.dim)]
        for a in range(spec.dim)
    ]
