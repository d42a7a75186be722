"""Additive piecewise-linear value models on fixed breakpoint grids.

All arithmetic is exact: every coordinate, slope and value is a
``fractions.Fraction``. Criteria are indexed 1..n and intervals 1..L_i,
where interval l of criterion i spans [x_{i,l-1}, x_{i,l}].
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property


class OutOfScaleError(ValueError):
    """A coordinate lies outside the breakpoint range of its criterion."""


class GridMismatchError(ValueError):
    """Two objects built on different grids were combined."""


def parse_rational(text: str) -> Fraction:
    """Parse "8/3", "2.5" or "4" into an exact rational."""
    if not isinstance(text, str):
        raise TypeError(f"expected string, got {type(text).__name__}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """Render exactly: decimal when the denominator is 2^a*5^b, else num/den."""
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    d = den
    two = five = 0
    while d % 2 == 0:
        d //= 2
        two += 1
    while d % 5 == 0:
        d //= 5
        five += 1
    if d != 1:
        return f"{num}/{den}"
    digits = max(two, five)
    scaled = abs(num) * 10**digits // den
    text = str(scaled).rjust(digits + 1, "0")
    head, tail = text[:-digits], text[-digits:]
    tail = tail.rstrip("0") or "0"
    sign = "-" if num < 0 else ""
    return f"{sign}{head}.{tail}"


@dataclass(frozen=True)
class CriterionScale:
    """One criterion: a name and strictly increasing breakpoints."""

    name: str
    breakpoints: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.breakpoints) < 2:
            raise ValueError(f"criterion {self.name!r} needs at least 2 breakpoints")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise ValueError(f"breakpoints of {self.name!r} must strictly increase")

    @property
    def segment_count(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def low(self) -> Fraction:
        return self.breakpoints[0]

    @property
    def high(self) -> Fraction:
        return self.breakpoints[-1]

    def contains(self, x: Fraction) -> bool:
        return self.low <= x <= self.high


@dataclass(frozen=True)
class Grid:
    """The full breakpoint structure; at least two criteria."""

    scales: tuple[CriterionScale, ...]

    def __post_init__(self) -> None:
        if len(self.scales) < 2:
            raise ValueError("a grid needs at least two criteria")
        names = [s.name for s in self.scales]
        if len(set(names)) != len(names):
            raise ValueError("criterion names must be unique")

    @property
    def criteria_count(self) -> int:
        return len(self.scales)

    def scale(self, i: int) -> CriterionScale:
        """Scale of criterion i (1-based)."""
        if not 1 <= i <= len(self.scales):
            raise IndexError(f"criterion index {i} out of range 1..{len(self.scales)}")
        return self.scales[i - 1]

    def breakpoint(self, i: int, k: int) -> Fraction:
        """Breakpoint x_{i,k}, k in 0..L_i."""
        return self.scale(i).breakpoints[k]

    def segment_count(self, i: int) -> int:
        return self.scale(i).segment_count


@dataclass(frozen=True)
class UtaModel:
    """Additive value function: u(x) = sum_i u_i(x_i), u_i(x_{i,0}) = 0.

    slopes[i-1][l-1] is the (strictly positive) slope of u_i on interval l.
    """

    grid: Grid
    slopes: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.slopes) != self.grid.criteria_count:
            raise ValueError("one slope tuple per criterion required")
        for scale, per_crit in zip(self.grid.scales, self.slopes):
            if len(per_crit) != scale.segment_count:
                raise ValueError(f"criterion {scale.name!r}: wrong slope count")
            if any(g <= 0 for g in per_crit):
                raise ValueError(f"criterion {scale.name!r}: slopes must be positive")

    @cached_property
    def _corner_values(self) -> tuple[tuple[Fraction, ...], ...]:
        # u_i at every breakpoint, per criterion; anchored at 0.
        out = []
        for scale, per_crit in zip(self.grid.scales, self.slopes):
            acc = [Fraction(0)]
            for g, a, b in zip(per_crit, scale.breakpoints, scale.breakpoints[1:]):
                acc.append(acc[-1] + g * (b - a))
            out.append(tuple(acc))
        return tuple(out)

    def slope(self, i: int, l: int) -> Fraction:
        """Slope on interval l of criterion i (both 1-based)."""
        if not 1 <= l <= self.grid.segment_count(i):
            raise IndexError(f"interval {l} out of range for criterion {i}")
        return self.slopes[i - 1][l - 1]

    def max_value(self, i: int) -> Fraction:
        return self._corner_values[i - 1][-1]

    def corner_values(self, i: int) -> tuple[Fraction, ...]:
        """u_i at every breakpoint of criterion i, starting at 0."""
        return self._corner_values[i - 1]

    def eval_marginal(self, i: int, x: Fraction) -> Fraction:
        """u_i(x); raises OutOfScaleError outside the breakpoint range."""
        scale = self.grid.scale(i)
        if not scale.contains(x):
            raise OutOfScaleError(f"{x} outside {scale.name!r} range [{scale.low}, {scale.high}]")
        # rightmost breakpoint <= x, so x sits on interval k+1 (or is the top corner)
        k = bisect_right(scale.breakpoints, x) - 1
        if k == scale.segment_count:
            return self._corner_values[i - 1][-1]
        base = self._corner_values[i - 1][k]
        return base + self.slopes[i - 1][k] * (x - scale.breakpoints[k])

    def invert_marginal(self, i: int, v: Fraction) -> Fraction | None:
        """The x with u_i(x) = v, or None when v exceeds the scale top.

        Negative v also maps to None: no point of the scale reaches it.
        Strict monotonicity makes the preimage unique when it exists.
        """
        corners = self._corner_values[i - 1]
        if v < 0 or v > corners[-1]:
            return None
        k = bisect_right(corners, v) - 1
        if k == len(corners) - 1:
            return self.grid.scale(i).breakpoints[-1]
        scale = self.grid.scale(i)
        return scale.breakpoints[k] + (v - corners[k]) / self.slopes[i - 1][k]


def normalize_unit_slope(model: UtaModel, i: int, l: int) -> UtaModel:
    """Rescale so the slope on interval l of criterion i becomes 1."""
    pivot = model.slope(i, l)
    return UtaModel(
        model.grid,
        tuple(tuple(g / pivot for g in per_crit) for per_crit in model.slopes),
    )


def renormalize_01(model: UtaModel, weights_out: bool = False):
    """Rescale so the total value of the best point is 1.

    Slope ratios are untouched; marginals stay anchored at 0. With
    ``weights_out`` the per-criterion shares of the unit total are returned
    alongside the rescaled model.
    """
    total = sum((model.max_value(i) for i in range(1, model.grid.criteria_count + 1)), Fraction(0))
    scaled = UtaModel(
        model.grid,
        tuple(tuple(g / total for g in per_crit) for per_crit in model.slopes),
    )
    if not weights_out:
        return scaled
    weights = {
        scale.name: model.max_value(i) / total
        for i, scale in enumerate(model.grid.scales, start=1)
    }
    return scaled, weights


def models_equivalent(a: UtaModel, b: UtaModel) -> bool:
    """True when the models are positive rescalings of each other.

    Requires identical grids; raises GridMismatchError otherwise.
    """
    if a.grid != b.grid:
        raise GridMismatchError("models live on different grids")
    ratio = b.slopes[0][0] / a.slopes[0][0]
    return all(
        gb == ratio * ga
        for pa, pb in zip(a.slopes, b.slopes)
        for ga, gb in zip(pa, pb)
    )
