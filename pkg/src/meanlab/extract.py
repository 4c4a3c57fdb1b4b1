"""Reverse-engineering the generator of a black-box bisymmetric mean.

The construction seeds f(0) = a, f(1) = b on the domain [a, b] of F and
fills the dyadic grid level by level through the midpoint identity
f((d1 + d2) / 2) = F(f(d1), f(d2)).  When F is reflexive, partially
strictly increasing, symmetric and bisymmetric, the resulting table is
well defined (independent of the decomposition path), strictly
increasing, and its gaps shrink with depth; a persistent gap is evidence
of a genuinely discontinuous generator.  The table is then extended by
monotone piecewise-linear interpolation, inverted exactly per segment,
and replayed against F to certify the quasi-arithmetic form.
"""

from __future__ import annotations

import math
import statistics
from bisect import bisect_right
from dataclasses import dataclass

from .core import (
    ClosureError,
    DyadicRational,
    Interval,
    ToleranceConfig,
    TwoPlaceFunction,
    interval_grid,
)
from .means import Generator
from .verify import PropertyReport, Witness

__all__ = [
    "GeneratorTable",
    "TableGenerator",
    "ConsistencyReport",
    "GapReport",
    "ReconstructionReport",
    "extract_generator",
    "cross_check_consistency",
    "table_monotone_check",
    "gap_analysis",
    "interpolate_generator",
    "reconstruct_and_compare",
    "affine_match",
    "table_to_csv",
]

MAX_DEPTH = 20
MAX_CROSS_CHECK_DEPTH = 12
DEFAULT_JUMP_FACTOR = 4.0


@dataclass(frozen=True)
class GeneratorTable:
    """Values of the extracted generator on all dyadics k / 2**depth.

    values[k] is the generator at parameter k / 2**depth; values[0] and
    values[-1] are the interval endpoints by construction.
    """

    interval: Interval
    depth: int
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != (1 << self.depth) + 1:
            raise ValueError("table size does not match depth")

    def node_param(self, k: int) -> float:
        return k / float(1 << self.depth)

    def dyadic(self, k: int) -> DyadicRational:
        return DyadicRational(k, self.depth)

    def entries(self) -> list[tuple[DyadicRational, float]]:
        return [(self.dyadic(k), v) for k, v in enumerate(self.values)]


@dataclass(frozen=True)
class TableGenerator(Generator):
    """Piecewise-linear generator interpolating a GeneratorTable."""

    table: GeneratorTable
    depth: int


@dataclass(frozen=True)
class ConsistencyReport:
    """Path-independence certificate: the worst disagreement between the
    canonical table value at a target dyadic and recomputations through
    every same-denominator midpoint decomposition of that target."""

    depth: int
    max_discrepancy: float
    worst_target: DyadicRational | None
    paths_checked: int


@dataclass(frozen=True)
class GapReport:
    """Largest gap between adjacent table values.  X and Y bracket the
    gap from below and above; jump_detected flags gaps too large to be a
    modulus-of-continuity artifact at this depth."""

    depth: int
    max_gap: float
    gap_location: tuple[DyadicRational, DyadicRational]
    jump_detected: bool
    X: float
    Y: float
    threshold: float


@dataclass(frozen=True)
class ReconstructionReport:
    """Sup-norm distance between F and its quasi-arithmetic replay on a
    grid of the domain square."""

    sup_error: float
    argmax: tuple[float, float]
    grid_n: int
    depth: int


def extract_generator(F: TwoPlaceFunction, depth: int) -> GeneratorTable:
    """Build the generator table at the given depth.

    Level k+1 values at odd multiples of 2**-(k+1) are F applied to the
    two adjacent level-k values, so the whole table costs exactly
    2**depth - 1 evaluations of F beyond the endpoint seed.
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must be in 1..{MAX_DEPTH}")
    n = 1 << depth
    lo, hi = F.domain.lo, F.domain.hi
    slack = F.domain.closure_slack()
    vals = [0.0] * (n + 1)
    vals[0] = lo
    vals[n] = hi
    for level in range(1, depth + 1):
        step = 1 << (depth - level)
        for k in range(step, n, 2 * step):
            v = F(vals[k - step], vals[k + step])
            if not (math.isfinite(v) and F.domain.contains(v, slack)):
                d = DyadicRational(k, depth)
                raise ClosureError(
                    f"extraction left {F.domain} at node {d}: "
                    f"F({vals[k - step]!r}, {vals[k + step]!r}) = {v!r}"
                )
            vals[k] = v
    return GeneratorTable(F.domain, depth, tuple(vals))


def cross_check_consistency(
    F: TwoPlaceFunction, depth: int, cfg: ToleranceConfig = ToleranceConfig()
) -> ConsistencyReport:
    """Recompute every table node through every pair (d1, d2) of
    same-denominator dyadics whose midpoint is that node and report the
    worst disagreement with the canonical value.

    Path independence of the midpoint recursion is exactly numerical
    bisymmetry, so means that fail bisymmetry surface here as a positive
    discrepancy.  Enumeration cost grows with 4**depth, hence the cap.
    """
    if not 1 <= depth <= MAX_CROSS_CHECK_DEPTH:
        raise ValueError(f"cross-check depth must be in 1..{MAX_CROSS_CHECK_DEPTH}")
    table = extract_generator(F, depth)
    vals = table.values
    n = 1 << depth
    worst = 0.0
    worst_target: DyadicRational | None = None
    paths = 0
    for k in range(n + 1):
        lo_i = max(0, 2 * k - n)
        for i in range(lo_i, k + 1):
            j = 2 * k - i
            paths += 1
            d = abs(F(vals[i], vals[j]) - vals[k])
            if d > worst:
                worst = d
                worst_target = table.dyadic(k)
    return ConsistencyReport(depth, worst, worst_target, paths)


def table_monotone_check(
    table: GeneratorTable, cfg: ToleranceConfig = ToleranceConfig()
) -> PropertyReport:
    """Adjacent table values must increase by more than the strictness
    threshold; the witness is the first flat or decreasing pair."""
    threshold = cfg.strict_threshold
    worst = 0.0
    witness = None
    vals = table.values
    for k in range(len(vals) - 1):
        delta = vals[k + 1] - vals[k]
        if delta <= threshold:
            violation = threshold - delta
            if violation > worst:
                worst = violation
            if witness is None:
                witness = Witness(
                    (table.node_param(k), table.node_param(k + 1)),
                    vals[k],
                    vals[k + 1],
                    "adjacent generator values fail strict increase",
                )
    passed = witness is None
    return PropertyReport(
        "partial_strict_increase", passed, witness, worst, len(vals) - 1, cfg
    )


def gap_analysis(
    table: GeneratorTable, jump_factor: float = DEFAULT_JUMP_FACTOR
) -> GapReport:
    """Locate the largest gap between adjacent table values and decide
    whether it looks like a genuine jump.

    The detection threshold jump_factor * (b - a) * 2**(-depth/2) shrinks
    slower than the gaps of any generator with a square-root-type modulus
    of continuity, so continuity gaps fall below it as depth grows while
    genuine jumps persist.
    """
    vals = table.values
    for k in range(len(vals) - 1):
        if vals[k + 1] <= vals[k]:
            raise ValueError(
                f"non-monotone table at node {table.dyadic(k)}; "
                "run table_monotone_check first"
            )
    max_gap = -1.0
    at = 0
    for k in range(len(vals) - 1):
        gap = vals[k + 1] - vals[k]
        if gap > max_gap:
            max_gap = gap
            at = k
    threshold = jump_factor * table.interval.width * 2.0 ** (-table.depth / 2.0)
    return GapReport(
        depth=table.depth,
        max_gap=max_gap,
        gap_location=(table.dyadic(at), table.dyadic(at + 1)),
        jump_detected=max_gap > threshold,
        X=vals[at],
        Y=vals[at + 1],
        threshold=threshold,
    )


def interpolate_generator(table: GeneratorTable) -> TableGenerator:
    """Monotone piecewise-linear interpolant through the table.

    Exact at the nodes; the inverse solves the matching segment linearly
    on the same breakpoints, so node values invert exactly and the
    round-trip error elsewhere is a couple of ulps.
    """
    vals = table.values
    for k in range(len(vals) - 1):
        if vals[k + 1] <= vals[k]:
            raise ValueError("cannot interpolate a non-monotone table")
    n = 1 << table.depth
    lo, hi = table.interval.lo, table.interval.hi

    def forward(t: float) -> float:
        if not -1e-12 <= t <= 1.0 + 1e-12:
            raise ValueError(f"parameter {t!r} outside [0, 1]")
        if t >= 1.0:
            return vals[n]
        if t <= 0.0:
            return vals[0]
        i = min(int(t * n), n - 1)
        frac = t * n - i
        return vals[i] + (vals[i + 1] - vals[i]) * frac

    def inverse(x: float) -> float:
        if not (lo - 1e-9 * max(1.0, hi - lo) <= x <= hi + 1e-9 * max(1.0, hi - lo)):
            raise ValueError(f"inversion target {x!r} outside [{lo!r}, {hi!r}]")
        if x >= vals[n]:
            return 1.0
        if x <= vals[0]:
            return 0.0
        i = bisect_right(vals, x) - 1
        if i >= n:
            i = n - 1
        frac = (x - vals[i]) / (vals[i + 1] - vals[i])
        return (i + frac) / n

    return TableGenerator(
        domain=Interval(0.0, 1.0),
        range=table.interval,
        forward=forward,
        inverse=inverse,
        label=f"pl-table(depth={table.depth})",
        table=table,
        depth=table.depth,
    )


def reconstruct_and_compare(
    F: TwoPlaceFunction,
    gen: Generator,
    cfg: ToleranceConfig = ToleranceConfig(),
    depth: int | None = None,
) -> ReconstructionReport:
    """Replay gen as a quasi-arithmetic mean against F on a grid_n x grid_n
    grid of the domain square and report the sup error with its argmax."""
    grid = interval_grid(F.domain, cfg.grid_n)
    params = [gen.inverse(x) for x in grid]
    sup = -1.0
    argmax = (grid[0], grid[0])
    for i, x in enumerate(grid):
        px = params[i]
        for j, y in enumerate(grid):
            replay = gen.forward((px + params[j]) / 2.0)
            d = abs(F(x, y) - replay)
            if d > sup:
                sup = d
                argmax = (x, y)
    if depth is None:
        depth = getattr(gen, "depth", 0)
    return ReconstructionReport(sup, argmax, cfg.grid_n, depth)


def affine_match(
    table: GeneratorTable, reference: Generator
) -> tuple[float, float, float]:
    """Fit table ~ reference(alpha * t + beta) by linear regression of
    reference.inverse(table value) against the node parameter t.

    Quasi-arithmetic representations are unique only up to an affine
    change of parameter, so a small residual certifies that the table
    realizes the same mean as the reference generator.
    Returns (alpha, beta, max residual in the reference parameter).
    """
    ts = [table.node_param(k) for k in range(len(table.values))]
    us = [reference.inverse(v) for v in table.values]
    fit = statistics.linear_regression(ts, us)
    alpha, beta = fit.slope, fit.intercept
    residual = max(abs(u - (alpha * t + beta)) for t, u in zip(ts, us))
    return alpha, beta, residual


def _fmt(v: float) -> str:
    return format(v, ".17g")


def table_to_csv(table: GeneratorTable) -> str:
    """CSV serialization: header num,exp,t,value; one row per node in
    increasing parameter order; full-precision decimal values."""
    lines = ["num,exp,t,value"]
    for k, v in enumerate(table.values):
        d = table.dyadic(k)
        lines.append(f"{d.num},{d.exp},{_fmt(table.node_param(k))},{_fmt(v)}")
    return "\n".join(lines) + "\n"
