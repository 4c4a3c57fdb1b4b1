"""Grid and randomized verifiers for the algebraic laws of two-place
functions: reflexivity, symmetry, bisymmetry, associativity, partial
strict increase, the strict-mean inequality, cancellativity, and
neutral-element search, plus a structured impossibility witness and a
continuity diagnostic profile.

Every check returns a PropertyReport with an explicit witness on failure.
Randomized checks draw their samples from a stream derived from
(seed, function label, check name), so identical inputs give bit-identical
reports regardless of the order checks run in.  A failed randomized check
escalates to a deterministic coarse grid to produce a canonical,
lexicographically-least maximal witness.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Literal

from .core import Interval, ToleranceConfig, TwoPlaceFunction, interval_grid

__all__ = [
    "Witness",
    "PropertyReport",
    "ImpossibilityReport",
    "ProfileReport",
    "check_reflexive",
    "check_symmetric",
    "check_bisymmetric",
    "check_associative",
    "check_partial_strict_increase",
    "check_strict_mean",
    "check_cancellative",
    "find_neutral_element",
    "impossibility_witness",
    "diagnostic_profile",
]

# Escalation grid used to canonicalize witnesses of failed randomized checks.
ESCALATION_GRID_N = 21

PropertyName = Literal[
    "reflexive",
    "symmetric",
    "bisymmetric",
    "associative",
    "partial_strict_increase",
    "strict_mean",
    "cancellative",
    "neutral_element",
]


@dataclass(frozen=True)
class Witness:
    """Inputs plus both evaluated sides of a violated relation."""

    points: tuple[float, ...]
    lhs: float
    rhs: float
    detail: str = ""


@dataclass(frozen=True)
class PropertyReport:
    property: str
    passed: bool
    witness: Witness | None
    max_violation: float
    samples_used: int
    config: ToleranceConfig


@dataclass(frozen=True)
class ImpossibilityReport:
    """Structured refutation showing a function cannot simultaneously be
    reflexive, associative and partially strictly increasing.

    kind is one of closure / reflexivity / strict_mean / strictness / none,
    checked in that order; `none` means no refutation was found (the
    function presumably fails associativity instead).
    """

    kind: Literal["closure", "reflexivity", "strict_mean", "strictness", "none"]
    pair: tuple[float, float]
    witness: Witness | None
    description: str

    @property
    def found(self) -> bool:
        return self.kind != "none"


@dataclass(frozen=True)
class ProfileReport:
    """Tabulation of the diagnostic curve z -> F(F(a,z), F(z,a))."""

    a: float
    zs: tuple[float, ...]
    values: tuple[float, ...]
    section: tuple[float, ...]
    max_jump: float
    jump_location: tuple[float, float]
    matches_section: bool


def _stream(F: TwoPlaceFunction, cfg: ToleranceConfig, check: str) -> random.Random:
    # str seeding hashes via sha512 in CPython: stable across processes.
    return random.Random(f"{cfg.seed}|{check}|{F.label}")


def _uniform(rng: random.Random, iv: Interval) -> float:
    return iv.lo + iv.width * rng.random()


def _report(
    prop: str,
    passed: bool,
    witness: Witness | None,
    max_violation: float,
    samples_used: int,
    cfg: ToleranceConfig,
) -> PropertyReport:
    return PropertyReport(prop, passed, witness, max_violation, samples_used, cfg)


def check_reflexive(
    F: TwoPlaceFunction, cfg: ToleranceConfig = ToleranceConfig()
) -> PropertyReport:
    """F(x, x) = x on a grid of the domain."""
    grid = interval_grid(F.domain, cfg.grid_n)
    worst = 0.0
    witness = None
    for x in grid:
        v = F(x, x)
        d = abs(v - x)
        if d > worst:
            worst = d
            witness = Witness((x,), v, x)
    passed = worst <= cfg.eq_tol
    return _report(
        "reflexive", passed, None if passed else witness, worst, len(grid), cfg
    )


def check_symmetric(
    F: TwoPlaceFunction, cfg: ToleranceConfig = ToleranceConfig()
) -> PropertyReport:
    """F(x, y) = F(y, x) on random pairs, grid-canonicalized on failure."""
    rng = _stream(F, cfg, "symmetric")
    worst = 0.0
    witness = None
    for _ in range(cfg.samples):
        x = _uniform(rng, F.domain)
        y = _uniform(rng, F.domain)
        l, r = F(x, y), F(y, x)
        d = abs(l - r)
        if d > worst:
            worst = d
            witness = Witness((x, y), l, r)
    used = cfg.samples
    if worst <= cfg.eq_tol:
        return _report("symmetric", True, None, worst, used, cfg)
    grid = interval_grid(F.domain, ESCALATION_GRID_N)
    used += len(grid) ** 2
    grid_worst = 0.0
    grid_witness = None
    for x in grid:
        for y in grid:
            l, r = F(x, y), F(y, x)
            d = abs(l - r)
            if d > grid_worst:
                grid_worst = d
                grid_witness = Witness((x, y), l, r)
    if grid_worst > cfg.eq_tol:
        return _report("symmetric", False, grid_witness, grid_worst, used, cfg)
    return _report("symmetric", False, witness, worst, used, cfg)


def check_bisymmetric(
    F: TwoPlaceFunction, cfg: ToleranceConfig = ToleranceConfig()
) -> PropertyReport:
    """F(F(x,y), F(u,v)) = F(F(x,u), F(y,v)) on random quadruples,
    grid-canonicalized on failure."""
    rng = _stream(F, cfg, "bisymmetric")
    worst = 0.0
    witness = None
    for _ in range(cfg.samples):
        x = _uniform(rng, F.domain)
        y = _uniform(rng, F.domain)
        u = _uniform(rng, F.domain)
        v = _uniform(rng, F.domain)
        l = F(F(x, y), F(u, v))
        r = F(F(x, u), F(y, v))
        d = abs(l - r)
        if d > worst:
            worst = d
            witness = Witness((x, y, u, v), l, r)
    used = cfg.samples
    if worst <= cfg.eq_tol:
        return _report("bisymmetric", True, None, worst, used, cfg)
    grid = interval_grid(F.domain, ESCALATION_GRID_N)
    n = len(grid)
    used += n**4
    # Cache the n^2 inner evaluations; the quadruple loop then costs two
    # evaluations per tuple.
    fv = [[F(a, b) for b in grid] for a in grid]
    grid_worst = 0.0
    grid_witness = None
    for ix in range(n):
        for iy in range(n):
            for iu in range(n):
                row_l = fv[ix][iy]
                row_r = fv[ix][iu]
                for iv_ in range(n):
                    l = F(row_l, fv[iu][iv_])
                    r = F(row_r, fv[iy][iv_])
                    d = abs(l - r)
                    if d > grid_worst:
                        grid_worst = d
                        grid_witness = Witness(
                            (grid[ix], grid[iy], grid[iu], grid[iv_]), l, r
                        )
    if grid_worst > cfg.eq_tol:
        return _report("bisymmetric", False, grid_witness, grid_worst, used, cfg)
    return _report("bisymmetric", False, witness, worst, used, cfg)


def check_associative(
    F: TwoPlaceFunction, cfg: ToleranceConfig = ToleranceConfig()
) -> PropertyReport:
    """F(F(x,y), z) = F(x, F(y,z)) on random triples, grid-canonicalized
    on failure."""
    rng = _stream(F, cfg, "associative")
    worst = 0.0
    witness = None
    for _ in range(cfg.samples):
        x = _uniform(rng, F.domain)
        y = _uniform(rng, F.domain)
        z = _uniform(rng, F.domain)
        l = F(F(x, y), z)
        r = F(x, F(y, z))
        d = abs(l - r)
        if d > worst:
            worst = d
            witness = Witness((x, y, z), l, r)
    used = cfg.samples
    if worst <= cfg.eq_tol:
        return _report("associative", True, None, worst, used, cfg)
    grid = interval_grid(F.domain, ESCALATION_GRID_N)
    n = len(grid)
    used += n**3
    fv = [[F(a, b) for b in grid] for a in grid]
    grid_worst = 0.0
    grid_witness = None
    for ix in range(n):
        for iy in range(n):
            for iz in range(n):
                l = F(fv[ix][iy], grid[iz])
                r = F(grid[ix], fv[iy][iz])
                d = abs(l - r)
                if d > grid_worst:
                    grid_worst = d
                    grid_witness = Witness((grid[ix], grid[iy], grid[iz]), l, r)
    if grid_worst > cfg.eq_tol:
        return _report("associative", False, grid_witness, grid_worst, used, cfg)
    return _report("associative", False, witness, worst, used, cfg)


def check_partial_strict_increase(
    F: TwoPlaceFunction, cfg: ToleranceConfig = ToleranceConfig()
) -> PropertyReport:
    """Every one-variable section x -> F(x, y0) and y -> F(x0, y) must
    increase by more than the strictness threshold between consecutive
    grid points.  The witness is the first flat or decreasing pair."""
    grid = interval_grid(F.domain, cfg.grid_n)
    threshold = cfg.strict_threshold
    worst = 0.0
    witness = None
    used = 0
    for slot in (0, 1):
        for fixed in grid:
            prev = F(grid[0], fixed) if slot == 0 else F(fixed, grid[0])
            for i in range(1, len(grid)):
                cur = F(grid[i], fixed) if slot == 0 else F(fixed, grid[i])
                used += 1
                delta = cur - prev
                if delta <= threshold:
                    violation = threshold - delta
                    if violation > worst:
                        worst = violation
                    if witness is None:
                        which = "first" if slot == 0 else "second"
                        witness = Witness(
                            (grid[i - 1], grid[i], fixed),
                            prev,
                            cur,
                            f"{which}-slot section is not strictly increasing",
                        )
                prev = cur
    passed = witness is None
    return _report("partial_strict_increase", passed, witness, worst, used, cfg)


def check_strict_mean(
    F: TwoPlaceFunction, cfg: ToleranceConfig = ToleranceConfig()
) -> PropertyReport:
    """min(x,y) < F(x,y) < max(x,y) by margin eq_tol on random pairs with
    x != y.  Pairs closer than a few tolerances carry no strictness signal
    and are skipped.  Grid-canonicalized on failure."""
    rng = _stream(F, cfg, "strict_mean")

    def defect(x: float, y: float) -> tuple[float, Witness | None]:
        mn, mx = (x, y) if x <= y else (y, x)
        v = F(x, y)
        room = min(v - mn, mx - v)
        if room > cfg.eq_tol:
            return 0.0, None
        bound = mn if v - mn <= mx - v else mx
        side = "min" if bound == mn else "max"
        return cfg.eq_tol - room, Witness(
            (x, y), v, bound, f"value does not strictly exceed {side}"
        )

    worst = 0.0
    witness = None
    used = 0
    for _ in range(cfg.samples):
        x = _uniform(rng, F.domain)
        y = _uniform(rng, F.domain)
        used += 1
        if abs(x - y) <= 4 * cfg.eq_tol:
            continue
        d, w = defect(x, y)
        if d > worst:
            worst = d
            witness = w
    if witness is None:
        return _report("strict_mean", True, None, worst, used, cfg)
    grid = interval_grid(F.domain, ESCALATION_GRID_N)
    used += len(grid) ** 2
    grid_worst = 0.0
    grid_witness = None
    for x in grid:
        for y in grid:
            if abs(x - y) <= 4 * cfg.eq_tol:
                continue
            d, w = defect(x, y)
            if d > grid_worst:
                grid_worst = d
                grid_witness = w
    if grid_witness is not None:
        return _report("strict_mean", False, grid_witness, grid_worst, used, cfg)
    return _report("strict_mean", False, witness, worst, used, cfg)


def check_cancellative(
    F: TwoPlaceFunction, cfg: ToleranceConfig = ToleranceConfig()
) -> PropertyReport:
    """Search grid triples (x, y, a) with x != y for collisions
    F(x,a) = F(y,a) or F(a,x) = F(a,y) within eq_tol; any collision is a
    cancellativity violation."""
    grid = interval_grid(F.domain, cfg.grid_n)
    worst = 0.0
    witness = None
    used = 0
    for i, x in enumerate(grid):
        for y in grid[i + 1 :]:
            for a in grid:
                used += 1
                d1 = abs(F(x, a) - F(y, a))
                d2 = abs(F(a, x) - F(a, y))
                for d, slot in ((d1, "first"), (d2, "second")):
                    if d <= cfg.eq_tol:
                        coincidence = cfg.eq_tol - d
                        if coincidence > worst:
                            worst = coincidence
                        if witness is None:
                            l = F(x, a) if slot == "first" else F(a, x)
                            r = F(y, a) if slot == "first" else F(a, y)
                            witness = Witness(
                                (x, y, a),
                                l,
                                r,
                                f"{slot}-slot collision: distinct arguments, "
                                "equal values",
                            )
    passed = witness is None
    return _report("cancellative", passed, witness, worst, used, cfg)


def _neutral_residual(F: TwoPlaceFunction, e: float, grid: list[float]) -> float:
    worst = 0.0
    for x in grid:
        worst = max(worst, abs(F(x, e) - x), abs(F(e, x) - x))
    return worst


def find_neutral_element(
    F: TwoPlaceFunction, cfg: ToleranceConfig = ToleranceConfig()
) -> tuple[float | None, PropertyReport]:
    """Search for e with F(x,e) = F(e,x) = x for all x.

    Scans grid candidates for the minimal residual, then refines around the
    best candidate by golden-section shrinking.  Returns (e, report) when
    the residual reaches eq_tol, else (None, report) with the best
    candidate as witness.
    """
    grid = interval_grid(F.domain, cfg.grid_n)
    best_e = grid[0]
    best_r = _neutral_residual(F, grid[0], grid)
    for e in grid[1:]:
        r = _neutral_residual(F, e, grid)
        if r < best_r:
            best_e, best_r = e, r
    used = len(grid) * (2 * len(grid))
    idx = grid.index(best_e)
    lo = grid[max(idx - 1, 0)]
    hi = grid[min(idx + 1, len(grid) - 1)]
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    for _ in range(80):
        if b - a <= 0.0:
            break
        m1 = b - phi * (b - a)
        m2 = a + phi * (b - a)
        r1 = _neutral_residual(F, m1, grid)
        r2 = _neutral_residual(F, m2, grid)
        used += 4 * len(grid)
        if r1 < best_r:
            best_e, best_r = m1, r1
        if r2 < best_r:
            best_e, best_r = m2, r2
        if r1 <= r2:
            b = m2
        else:
            a = m1
    if best_r <= cfg.eq_tol:
        report = _report("neutral_element", True, None, best_r, used, cfg)
        return best_e, report
    worst_x = max(
        grid, key=lambda x: max(abs(F(x, best_e) - x), abs(F(best_e, x) - x))
    )
    witness = Witness(
        (best_e, worst_x),
        F(worst_x, best_e),
        worst_x,
        "best candidate neutral element still fails",
    )
    return None, _report("neutral_element", False, witness, best_r, used, cfg)


def impossibility_witness(
    F: TwoPlaceFunction,
    a: float,
    b: float,
    cfg: ToleranceConfig = ToleranceConfig(),
) -> ImpossibilityReport:
    """Refute the joint claim "reflexive + associative + partially strictly
    increasing" at a pair a < b.

    Checks in dependency order: closure of F(a,b); reflexivity at
    {a, (a+b)/2, b} (largest violation wins); the strict-mean inequality
    a < F(a,b) < b; and finally strictness of the section y -> F(a, y),
    which by associativity + reflexivity must take equal values at
    y = F(a,b) and y = b.  Reports the first refutation found.
    """
    if not (F.domain.contains(a) and F.domain.contains(b) and a < b):
        raise ValueError(f"need a < b inside {F.domain}")
    pair = (a, b)
    slack = F.domain.closure_slack()

    m = F(a, b)
    if not (math.isfinite(m) and F.domain.contains(m, slack)):
        return ImpossibilityReport(
            "closure",
            pair,
            Witness((a, b), m, F.domain.hi, "evaluation left the domain"),
            f"closure violated: F({a!r}, {b!r}) = {m!r} escapes {F.domain}",
        )

    probes = (a, (a + b) / 2.0, b)
    worst_x, worst_d = None, cfg.eq_tol
    for x in probes:
        d = abs(F(x, x) - x)
        if d > worst_d:
            worst_x, worst_d = x, d
    if worst_x is not None:
        v = F(worst_x, worst_x)
        return ImpossibilityReport(
            "reflexivity",
            pair,
            Witness((worst_x,), v, worst_x, "F(x,x) != x"),
            f"reflexivity violated at x={worst_x!r}: F(x,x) = {v!r}",
        )

    if m <= a + cfg.eq_tol or m >= b - cfg.eq_tol:
        bound = a if m <= a + cfg.eq_tol else b
        return ImpossibilityReport(
            "strict_mean",
            pair,
            Witness((a, b), m, bound, "F(a,b) hits an endpoint of the pair"),
            f"strict mean violated at ({a!r}, {b!r}): F = {m!r}",
        )

    t = F(a, m)
    if abs(t - m) <= cfg.eq_tol:
        return ImpossibilityReport(
            "strictness",
            pair,
            Witness(
                (a, m, b),
                t,
                m,
                "second-slot section takes equal values at y=m and y=b",
            ),
            f"strictness violated at ({a!r}, {m!r}) vs ({a!r}, {b!r}): "
            f"F(a, F(a,b)) = F(a,b) = {m!r} with m != b",
        )

    return ImpossibilityReport(
        "none", pair, None, "no refutation found at this pair"
    )


def diagnostic_profile(
    F: TwoPlaceFunction, a: float, cfg: ToleranceConfig = ToleranceConfig()
) -> ProfileReport:
    """Tabulate z -> F(F(a,z), F(z,a)) on the grid and report the largest
    adjacent jump as a discontinuity heuristic.

    When F is symmetric and reflexive the curve coincides with the section
    z -> F(a, z); `matches_section` records whether it does within eq_tol.
    """
    if not F.domain.contains(a):
        raise ValueError(f"base point {a!r} outside {F.domain}")
    zs = tuple(interval_grid(F.domain, cfg.grid_n))
    values = tuple(F(F(a, z), F(z, a)) for z in zs)
    section = tuple(F(a, z) for z in zs)
    max_jump = 0.0
    jump_location = (zs[0], zs[1])
    for i in range(len(zs) - 1):
        jump = abs(values[i + 1] - values[i])
        if jump > max_jump:
            max_jump = jump
            jump_location = (zs[i], zs[i + 1])
    matches = all(abs(v - s) <= cfg.eq_tol for v, s in zip(values, section))
    return ProfileReport(a, zs, values, section, max_jump, jump_location, matches)
