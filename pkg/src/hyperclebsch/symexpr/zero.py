"""Deciding whether a scalar expression vanishes identically."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .canon import NOT_POLYNOMIAL, poly_normalize
from .expr import DomainError, Expr, evaluate

__all__ = ["ZeroStatus", "ZeroVerdict", "is_zero", "sample_points", "TOLERANCE", "BOX"]

TOLERANCE = 1e-9
BOX = 2.0


class ZeroStatus(str, Enum):
    ZERO = "Zero"
    NONZERO = "NonZero"
    PROBABLY_ZERO = "ProbablyZero"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ZeroVerdict:
    status: ZeroStatus
    witness: tuple[float, ...] | None = None
    value: float | None = None
    seed: int | None = None


def sample_points(m: int, seed: int, count: int, box: float = BOX) -> np.ndarray:
    """``count`` seeded points in ``[-box, box]^(2m+1)``."""
    rng = np.random.default_rng(seed)
    return rng.uniform(-box, box, size=(count, 2 * m + 1))


def is_zero(e: Expr, m: int, seed: int = 0, trials: int = 20) -> ZeroVerdict:
    """Exact for polynomials, seeded random evaluation otherwise.

    Points that raise :class:`DomainError` are rejected and redrawn, up to
    ``10 * trials`` draws in total.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    poly = poly_normalize(e)
    if poly is not NOT_POLYNOMIAL and poly.is_zero():
        return ZeroVerdict(ZeroStatus.ZERO, seed=seed)
    accepted = 0
    for point in sample_points(m, seed, 10 * trials):
        try:
            value = evaluate(e, point)
        except DomainError:
            continue
        if abs(value) > TOLERANCE:
            return ZeroVerdict(ZeroStatus.NONZERO, tuple(float(x) for x in point), value, seed)
        accepted += 1
        if accepted == trials:
            break
    if accepted == 0:
        return ZeroVerdict(ZeroStatus.UNKNOWN, seed=seed)
    return ZeroVerdict(ZeroStatus.PROBABLY_ZERO, seed=seed)
