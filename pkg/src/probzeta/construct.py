"""Iterated alternating-power products whose inverse series stays nonnegative.

Starting from a seed group, each step finds the first negative inverse
coefficient ``c_m`` and multiplies by ``A_m^f`` with ``f = -c_m / m``. The
new factor's inverse starts ``1 + f m / m^s``, which cancels ``c_m`` exactly
and leaves every smaller index untouched.

Only the part of ``P_{A_m}`` below index ``m(m-1)`` is known, so a step is
taken only when the working bound stays inside that range.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from .catalog import (
    AlternatingTruncated,
    BostonPower,
    Evaluator,
    Recipe,
    alternating_truncated_series,
    alternating_validity,
    boston_power_series,
    seed_degree,
)
from .dseries import DirichletSeries, first_negative, invert, mul


class ConstructionStop(Exception):
    reason = "stopped"


class ConstructionComplete(ConstructionStop):
    reason = "complete"


class BoundExhausted(ConstructionStop):
    reason = "bound exhausted"


class DivisibilityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ConstructionState:
    steps: tuple[tuple[int, int], ...]
    series: DirichletSeries
    inverse: DirichletSeries
    bound: int
    frontier: int

    @property
    def degrees(self) -> list[int]:
        return [m for m, _ in self.steps]

    def recipe_factors(self) -> list[Recipe]:
        """The appended ``A_m^f`` factors, seed excluded."""
        return [alternating_power(m, f) for m, f in self.steps[1:]]


@dataclass(frozen=True)
class TraceRow:
    k: int
    m: int
    f: int
    frontier: int

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "m": self.m, "f": str(self.f),
                           "frontier": self.frontier})


def alternating_power(m: int, f: int) -> BostonPower:
    return BostonPower(AlternatingTruncated(m), f, math.factorial(m),
                       math.factorial(m) // 2)


def _frontier(inverse: DirichletSeries) -> int:
    neg = first_negative(inverse)
    return inverse.bound if neg is None else neg[0] - 1


def init(seed: Recipe, bound: int, evaluator: Evaluator | None = None) -> ConstructionState:
    evaluator = evaluator or Evaluator()
    series = evaluator.series(seed, bound)
    inverse = invert(series)
    return ConstructionState(((seed_degree(seed), 1),), series, inverse, bound,
                             _frontier(inverse))


def step(state: ConstructionState) -> ConstructionState:
    neg = first_negative(state.inverse)
    if neg is None:
        raise ConstructionComplete(
            f"inverse is nonnegative up to bound {state.bound}")
    m, c = neg
    last = state.steps[-1][0]
    if m <= last:
        raise BoundExhausted(f"first negative index {m} does not exceed degree {last}")
    if m < 9 or alternating_validity(m) < state.bound:
        raise BoundExhausted(
            f"A_{m} is only certified up to index {alternating_validity(m)}, "
            f"working bound is {state.bound}")
    if c % m:
        raise DivisibilityError(
            f"c_{m} = {c} is not divisible by {m}; the series is not that of a perfect group")
    f = -c // m
    factor = boston_power_series(alternating_truncated_series(m, state.bound), f,
                                 math.factorial(m), math.factorial(m) // 2)
    series = mul(state.series, factor)
    inverse = invert(series)
    return replace(state, steps=state.steps + ((m, f),), series=series,
                   inverse=inverse, frontier=max(state.frontier, _frontier(inverse)))


def run(seed: Recipe, bound: int, max_steps: int,
        evaluator: Evaluator | None = None) -> tuple[ConstructionState, list[TraceRow], str]:
    """Step until complete, out of certified range, or ``max_steps`` reached.

    Returns the final state, one trace row per factor (the seed is row 1) and
    the stop reason.
    """
    state = init(seed, bound, evaluator)
    trace = [TraceRow(1, state.steps[0][0], 1, state.frontier)]
    reason = "max steps"
    for _ in range(max_steps):
        try:
            state = step(state)
        except ConstructionStop as stop:
            reason = stop.reason
            break
        m, f = state.steps[-1]
        trace.append(TraceRow(len(state.steps), m, f, state.frontier))
    else:
        if first_negative(state.inverse) is None:
            reason = "complete"
    return state, trace, reason
