"""Shared primitives: closed intervals, exact dyadic rationals, tolerance
configuration, and the evaluable two-place-function wrapper."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

__all__ = [
    "MeanLabError",
    "ClosureError",
    "Interval",
    "DyadicRational",
    "ToleranceConfig",
    "TwoPlaceFunction",
    "EvalCounter",
    "dyadic_midpoint",
    "dyadic_to_real",
    "interval_grid",
]

# Largest binary exponent for which every k/2^exp is an exact double.
MAX_DYADIC_EXP = 52


class MeanLabError(Exception):
    """Base class for errors raised by this package."""


class ClosureError(MeanLabError):
    """An evaluation produced a value outside the declared interval."""


@dataclass(frozen=True)
class Interval:
    """Closed real interval [lo, hi] with lo < hi and finite endpoints."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= x <= self.hi + slack

    def closure_slack(self) -> float:
        # Absolute tolerance for "lies in the interval": a few ulps of the
        # endpoint scale, so legitimate means never trip on rounding.
        return 1e-9 * max(1.0, self.width, abs(self.lo), abs(self.hi))

    def __str__(self) -> str:
        return f"[{self.lo:g}, {self.hi:g}]"


@dataclass(frozen=True)
class DyadicRational:
    """Exact dyadic rational num / 2**exp in [0, 1], kept in reduced form
    (num odd, or exp == 0).  All arithmetic is integer arithmetic; no
    rounding ever occurs on the parameter grid."""

    num: int
    exp: int

    def __post_init__(self) -> None:
        num, exp = self.num, self.exp
        if exp < 0 or num < 0 or num > (1 << exp):
            raise ValueError(f"{num}/2^{exp} is not a dyadic in [0, 1]")
        while num % 2 == 0 and exp > 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @property
    def value(self) -> float:
        return dyadic_to_real(self)

    def __lt__(self, other: "DyadicRational") -> bool:
        e = max(self.exp, other.exp)
        return (self.num << (e - self.exp)) < (other.num << (e - other.exp))

    def __str__(self) -> str:
        return f"{self.num}/{1 << self.exp}"


def dyadic_midpoint(d1: DyadicRational, d2: DyadicRational) -> DyadicRational:
    """Exact midpoint (d1 + d2) / 2, reduced.  Dyadics are closed under
    midpoint, so this never fails."""
    e = max(d1.exp, d2.exp)
    n1 = d1.num << (e - d1.exp)
    n2 = d2.num << (e - d2.exp)
    return DyadicRational(n1 + n2, e + 1)


def dyadic_to_real(d: DyadicRational) -> float:
    """Exact float value of the dyadic.  Depths beyond the exact double
    budget are rejected rather than rounded."""
    if d.exp > MAX_DYADIC_EXP:
        raise ValueError(f"dyadic depth {d.exp} exceeds exact float budget")
    return d.num / float(1 << d.exp)


@dataclass(frozen=True)
class ToleranceConfig:
    """Knobs shared by every verifier.

    eq_tol        absolute tolerance for value equality
    strict_margin extra margin required on top of eq_tol for an increase
                  to count as strict
    grid_n        per-axis point count for grid-based checks
    samples       number of random tuples drawn by randomized checks
    seed          base seed; sample streams are derived from
                  (seed, function label, check name) so reports are
                  reproducible and independent of check order
    """

    eq_tol: float = 1e-9
    strict_margin: float = 0.0
    grid_n: int = 21
    samples: int = 1000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.eq_tol <= 0:
            raise ValueError("eq_tol must be positive")
        if self.strict_margin < 0:
            raise ValueError("strict_margin must be nonnegative")
        if self.grid_n < 2:
            raise ValueError("grid_n must be at least 2")
        if self.samples < 1:
            raise ValueError("samples must be positive")

    @property
    def strict_threshold(self) -> float:
        return self.eq_tol + self.strict_margin


Provenance = Literal["catalog", "expression", "tabulated"]


@dataclass(frozen=True)
class TwoPlaceFunction:
    """A pure evaluable map F: domain x domain -> reals with metadata.

    Purity is a contract on `fn`: equal inputs must give equal outputs and
    evaluation must not touch shared mutable state, so concurrent calls are
    safe.  Closure into the domain is not enforced per call (compositions
    such as F(F(x,y),z) may legitimately pass through values slightly
    outside the domain); use `closure_witness` to check it on demand.
    """

    domain: Interval
    fn: Callable[[float, float], float]
    label: str
    provenance: Provenance = "catalog"

    def __call__(self, x: float, y: float) -> float:
        return self.fn(x, y)

    def closure_witness(self, n: int = 21) -> tuple[float, float, float] | None:
        """Scan an n x n grid of the domain square; return (x, y, value)
        for the first evaluation escaping the domain (tiny slack allowed
        for rounding), or None if the grid stays inside."""
        slack = self.domain.closure_slack()
        pts = interval_grid(self.domain, n)
        for x in pts:
            for y in pts:
                v = self.fn(x, y)
                if not (math.isfinite(v) and self.domain.contains(v, slack)):
                    return (x, y, v)
        return None


class EvalCounter:
    """Instrumentation wrapper counting black-box evaluations.

    The counter is intentionally mutable and not thread-safe; it exists for
    budget assertions, not for production evaluation paths.
    """

    def __init__(self, base: TwoPlaceFunction):
        self.count = 0
        self._base = base
        self.function = TwoPlaceFunction(
            base.domain, self._call, base.label, base.provenance
        )

    def _call(self, x: float, y: float) -> float:
        self.count += 1
        return self._base.fn(x, y)


def interval_grid(iv: Interval, n: int) -> list[float]:
    """n equally spaced points from lo to hi inclusive, strictly increasing.

    Built mirror-symmetrically so that reflecting the grid through the
    interval midpoint reproduces it exactly in floating point.
    """
    if n < 2:
        raise ValueError("grid needs at least 2 points")
    cells = n - 1
    pts = [0.0] * n
    for i in range((n + 1) // 2):
        off = iv.width * (i / cells)
        pts[i] = iv.lo + off
        pts[cells - i] = iv.hi - off
    return pts
