"""Constructors for the concrete operation families: quasi-arithmetic and
affine-conjugate means, translative (additive) operations, the min/max
family driven by a decreasing gap function, and a catalog of named
two-place operations including stock counterexamples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Mapping

from .core import Interval, ToleranceConfig, TwoPlaceFunction, interval_grid

__all__ = [
    "Generator",
    "GapFunction",
    "quasi_arithmetic",
    "affine_conjugate",
    "translative",
    "gap_minmax",
    "catalog_get",
    "catalog_names",
    "catalog_describe",
]

_PROBE_N = 17  # per-axis size of construction-time validation grids


@dataclass(frozen=True)
class Generator:
    """A strictly monotone parameterization t -> x with an explicit inverse.

    `forward` maps the parameter interval `domain` onto the value interval
    `range`; `inverse` must undo it (checked on a grid at construction use
    sites, not here, so tables and closed forms can share the type).
    """

    domain: Interval
    range: Interval
    forward: Callable[[float], float]
    inverse: Callable[[float], float]
    label: str


@dataclass(frozen=True)
class GapFunction:
    """Monotone decreasing g on an interval with fixed point g(e) = e.

    `tie_rule` decides the two-sided tie case of the min/max family (both
    y = g(x) and x = g(g(x))), where either choice is admissible.
    """

    g: Callable[[float], float]
    e: float
    tie_rule: Literal["prefer_min", "prefer_max"] = "prefer_min"


def _validate_generator(gen: Generator, eq_tol: float = 1e-9) -> None:
    """Check strict monotonicity, endpoint mapping and inverse round-trip
    of a generator on a probe grid; raises ValueError on failure."""
    ts = interval_grid(gen.domain, 33)
    vals = [gen.forward(t) for t in ts]
    increasing = vals[-1] > vals[0]
    for a, b in zip(vals, vals[1:]):
        if (b <= a) if increasing else (b >= a):
            raise ValueError(f"generator {gen.label!r} is not strictly monotone")
    slack = gen.range.closure_slack() + eq_tol
    endpoints = (vals[0], vals[-1]) if increasing else (vals[-1], vals[0])
    if abs(endpoints[0] - gen.range.lo) > slack or abs(endpoints[1] - gen.range.hi) > slack:
        raise ValueError(
            f"generator {gen.label!r} does not map its domain onto its range"
        )
    scale = max(1.0, gen.domain.width)
    for t, v in zip(ts, vals):
        if abs(gen.inverse(v) - t) > eq_tol * scale:
            raise ValueError(
                f"generator inverse inconsistent for {gen.label!r} at t={t!r}"
            )


def quasi_arithmetic(gen: Generator) -> TwoPlaceFunction:
    """Conjugate of the arithmetic mean: F(x,y) = f((f~(x) + f~(y)) / 2)
    where f is the generator and f~ its inverse.  Defined on gen.range."""
    _validate_generator(gen)
    fwd, inv = gen.forward, gen.inverse

    def fn(x: float, y: float) -> float:
        return fwd((inv(x) + inv(y)) / 2.0)

    return TwoPlaceFunction(gen.range, fn, f"qa[{gen.label}]", "catalog")


def affine_conjugate(
    gen: Generator,
    A: float,
    B: float,
    C: float,
    domain: Interval | None = None,
) -> TwoPlaceFunction:
    """F(x,y) = f(A*f~(x) + B*f~(y) + C); requires A*B != 0.

    With A + B = 1 and C = 0 this is the weighted (generally asymmetric)
    mean family; with A = B = 1, C = 0 it is the translative form on a
    suitably small domain.  The affine image of the domain square must stay
    inside the generator's parameter interval (checked on a grid).
    """
    if A * B == 0:
        raise ValueError("affine coefficients must satisfy A*B != 0")
    _validate_generator(gen)
    dom = domain if domain is not None else gen.range
    fwd, inv = gen.forward, gen.inverse
    slack = gen.domain.closure_slack()
    for x in interval_grid(dom, _PROBE_N):
        for y in interval_grid(dom, _PROBE_N):
            arg = A * inv(x) + B * inv(y) + C
            if not gen.domain.contains(arg, slack):
                raise ValueError(
                    f"range escape: parameter {arg!r} at ({x!r}, {y!r}) "
                    f"leaves {gen.domain} of generator {gen.label!r}"
                )

    def fn(x: float, y: float) -> float:
        return fwd(A * inv(x) + B * inv(y) + C)

    label = f"affine[{gen.label};A={A:g},B={B:g},C={C:g}]"
    return TwoPlaceFunction(dom, fn, label, "catalog")


def translative(gen: Generator, domain: Interval | None = None) -> TwoPlaceFunction:
    """F(x,y) = f(f~(x) + f~(y)): associative and bisymmetric, generally
    not reflexive.  The parameter sums over the operation domain must stay
    inside the generator's parameter interval (checked on a grid)."""
    _validate_generator(gen)
    dom = domain if domain is not None else gen.range
    fwd, inv = gen.forward, gen.inverse
    slack = gen.domain.closure_slack()
    for x in interval_grid(dom, _PROBE_N):
        for y in interval_grid(dom, _PROBE_N):
            arg = inv(x) + inv(y)
            if not gen.domain.contains(arg, slack):
                raise ValueError(
                    f"range escape: parameter {arg!r} at ({x!r}, {y!r}) "
                    f"leaves {gen.domain} of generator {gen.label!r}"
                )

    def fn(x: float, y: float) -> float:
        return fwd(inv(x) + inv(y))

    return TwoPlaceFunction(dom, fn, f"tr[{gen.label}]", "catalog")


def gap_minmax(gf: GapFunction, iv: Interval) -> TwoPlaceFunction:
    """Min/max operation steered by a decreasing gap function g:

        F(x,y) = min(x,y)  if y < g(x), or y = g(x) and x < g(g(x))
               = max(x,y)  if y > g(x), or y = g(x) and x > g(g(x))
        tie_rule decides  if y = g(x) and x = g(g(x)).

    The fixed point e of g is a neutral element of F.  Comparisons are
    exact float comparisons: the case split is combinatorial, not metric.
    """
    g, e, tie_rule = gf.g, gf.e, gf.tie_rule
    if tie_rule not in ("prefer_min", "prefer_max"):
        raise ValueError(f"unknown tie rule {tie_rule!r}")
    if not iv.contains(e):
        raise ValueError(f"fixed point {e!r} outside {iv}")
    cfg = ToleranceConfig()
    slack = iv.closure_slack()
    pts = interval_grid(iv, 33)
    gvals = [g(x) for x in pts]
    for x, gx in zip(pts, gvals):
        if not iv.contains(gx, slack):
            raise ValueError(f"gap function leaves {iv} at x={x!r}")
    for a, b in zip(gvals, gvals[1:]):
        if b > a + slack:
            raise ValueError("gap function is not monotone decreasing")
    if abs(g(e) - e) > cfg.eq_tol:
        raise ValueError(f"g({e!r}) != {e!r}: not a fixed point")

    prefer_min = tie_rule == "prefer_min"

    def fn(x: float, y: float) -> float:
        gx = g(x)
        if y < gx:
            return min(x, y)
        if y > gx:
            return max(x, y)
        ggx = g(gx)
        if x < ggx:
            return min(x, y)
        if x > ggx:
            return max(x, y)
        return min(x, y) if prefer_min else max(x, y)

    label = f"gap_minmax[e={e:g},{tie_rule}]"
    return TwoPlaceFunction(iv, fn, label, "catalog")


# ---------------------------------------------------------------------------
# catalog

_CATALOG = (
    ("arithmetic", "", "the arithmetic mean (x+y)/2"),
    ("geometric", "", "sqrt(x*y); use an interval with lo >= 0"),
    ("harmonic", "", "2xy/(x+y); use an interval with lo > 0"),
    ("power", "p", "((x^p+y^p)/2)^(1/p); p=0 means geometric"),
    ("projection_x", "", "first projection F(x,y) = x"),
    ("projection_y", "", "second projection F(x,y) = y"),
    ("min", "", "minimum of the arguments"),
    ("max", "", "maximum of the arguments"),
    ("gini", "p,q", "((x^p+y^p)/(x^q+y^q))^(1/(p-q)); reflexive symmetric "
     "strict mean that is not bisymmetric, e.g. p=2,q=1 on [1,2]"),
    ("probabilistic_sum", "", "x + y - x*y on [0,1]"),
)


def catalog_names() -> tuple[str, ...]:
    return tuple(name for name, _, _ in _CATALOG)


def catalog_describe() -> tuple[tuple[str, str, str], ...]:
    """(name, parameter names, description) rows for the CLI listing."""
    return _CATALOG


def _geometric(x: float, y: float) -> float:
    return math.sqrt(x * y)


def catalog_get(
    name: str,
    iv: Interval,
    params: Mapping[str, float] | None = None,
) -> TwoPlaceFunction:
    """Look up a named operation restricted to `iv`.

    Raises ValueError for unknown names, missing/extra parameters, or
    parameter/interval combinations that fail to evaluate or escape the
    interval on a probe grid.
    """
    p = dict(params or {})

    def take(key: str) -> float:
        try:
            return float(p.pop(key))
        except KeyError:
            raise ValueError(f"catalog mean {name!r} requires parameter {key!r}") from None

    label = name
    if name == "arithmetic":
        fn = lambda x, y: (x + y) / 2.0
    elif name == "geometric":
        fn = _geometric
    elif name == "harmonic":
        fn = lambda x, y: 2.0 * x * y / (x + y)
    elif name == "power":
        exponent = take("p")
        if exponent == 0.0:
            fn = _geometric
        else:
            inv_exponent = 1.0 / exponent
            fn = lambda x, y: ((x**exponent + y**exponent) / 2.0) ** inv_exponent
        label = f"power(p={exponent:g})"
    elif name == "projection_x":
        fn = lambda x, y: x
    elif name == "projection_y":
        fn = lambda x, y: y
    elif name == "min":
        fn = lambda x, y: min(x, y)
    elif name == "max":
        fn = lambda x, y: max(x, y)
    elif name == "gini":
        gp, gq = take("p"), take("q")
        if gp == gq:
            raise ValueError("gini requires p != q")
        inv_diff = 1.0 / (gp - gq)
        fn = lambda x, y: ((x**gp + y**gp) / (x**gq + y**gq)) ** inv_diff
        label = f"gini(p={gp:g},q={gq:g})"
    elif name == "probabilistic_sum":
        fn = lambda x, y: x + y - x * y
    else:
        raise ValueError(
            f"unknown catalog mean {name!r}; known: {', '.join(catalog_names())}"
        )
    if p:
        raise ValueError(f"unexpected parameters for {name!r}: {sorted(p)}")

    F = TwoPlaceFunction(iv, fn, label, "catalog")
    try:
        witness = F.closure_witness(_PROBE_N)
    except (ArithmeticError, ValueError) as exc:
        raise ValueError(f"{label} does not evaluate on {iv}: {exc}") from exc
    if witness is not None:
        x, y, v = witness
        raise ValueError(
            f"{label} does not close on {iv}: F({x!r}, {y!r}) = {v!r}"
        )
    return F
