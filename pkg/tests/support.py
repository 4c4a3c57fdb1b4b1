"""Shared helpers for the test suite."""

from __future__ import annotations

import math

from meanlab import Generator, GapFunction, Interval, TwoPlaceFunction, gap_minmax

UNIT = Interval(0.0, 1.0)


def identity_generator() -> Generator:
    return Generator(UNIT, UNIT, lambda t: t, lambda x: x, "identity")


def exp16_generator() -> Generator:
    """t -> 16**t mapping [0,1] onto [1,16] (geometric mean generator)."""
    ln16 = math.log(16.0)
    return Generator(
        UNIT,
        Interval(1.0, 16.0),
        lambda t: 16.0**t,
        lambda x: math.log(x) / ln16,
        "16^t",
    )


def harmonic_generator() -> Generator:
    """t -> 2/(2-t) mapping [0,1] onto [1,2] (harmonic mean generator)."""
    return Generator(
        UNIT,
        Interval(1.0, 2.0),
        lambda t: 2.0 / (2.0 - t),
        lambda x: 2.0 - 2.0 / x,
        "2/(2-t)",
    )


def product_mean() -> TwoPlaceFunction:
    """x*y on [0.1, 1], built translatively from the exponential."""
    from meanlab import translative

    gen = Generator(
        Interval(math.log(0.005), 0.0),
        Interval(0.005, 1.0),
        math.exp,
        math.log,
        "exp",
    )
    return translative(gen, Interval(0.1, 1.0))


def reflection_gap(e: float = 0.5, tie_rule: str = "prefer_min") -> TwoPlaceFunction:
    """Min/max operation on [0,1] driven by the clipped reflection
    g(x) = clamp(2e - x); g is monotone decreasing with fixed point e."""

    def g(x: float) -> float:
        return min(1.0, max(0.0, 2.0 * e - x))

    return gap_minmax(GapFunction(g, e, tie_rule), UNIT)


def unit_reflection_gap(tie_rule: str = "prefer_min") -> TwoPlaceFunction:
    """The canonical instance g(x) = 1 - x, e = 1/2 on [0,1]."""
    return gap_minmax(GapFunction(lambda x: 1.0 - x, 0.5, tie_rule), UNIT)


def step_generator_mean() -> TwoPlaceFunction:
    """A mean on [0,1] built from a strictly increasing generator with a
    genuine jump of 1/2 at parameter 1/2; extraction reproduces the step
    and the gap never closes with depth."""

    def fwd(t: float) -> float:
        return 0.5 * t if t < 0.5 else 0.5 * t + 0.5

    def inv(x: float) -> float:
        if x < 0.25:
            return 2.0 * x
        if x < 0.75:
            return 0.5
        return 2.0 * x - 1.0

    def fn(x: float, y: float) -> float:
        return fwd((inv(x) + inv(y)) / 2.0)

    return TwoPlaceFunction(UNIT, fn, "step-generator", "tabulated")


def conjugate(F: TwoPlaceFunction, alpha: float, beta: float) -> TwoPlaceFunction:
    """Conjugate F by the affine order isomorphism t -> alpha*t + beta
    (alpha > 0); verdicts of the law checks should not change."""
    assert alpha > 0
    iv = Interval(alpha * F.domain.lo + beta, alpha * F.domain.hi + beta)

    def fn(x: float, y: float) -> float:
        return alpha * F((x - beta) / alpha, (y - beta) / alpha) + beta

    return TwoPlaceFunction(iv, fn, f"conj[{F.label};{alpha:g},{beta:g}]", F.provenance)
