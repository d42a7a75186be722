"""Query plays over breakpoint rectangles.

Rectangle (l_i, l_j) is the product of interval l_i on criterion i and
interval l_j on criterion j (intervals are 1-based: interval l spans
[x_{l-1}, x_l]). Each play asks a respondent pair for indifference points
and returns three points A, B, C with A ~ B for one respondent and A ~ C
for the other; which respondent is which stays unknown.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import Grid
from .oracle import AnswerPair, AnswerSource, OracleFailure, Query


class IterationBudgetExceeded(RuntimeError):
    """The adaptive probe loop ran past its defensive budget."""


@dataclass(frozen=True)
class PlanePoint:
    """A point of the (i, j) plane, in scale coordinates."""

    v_i: Fraction
    v_j: Fraction


@dataclass(frozen=True)
class SrInfo:
    """Both indifference points pass through one rectangle.

    A, B and C lie in the closed rectangle; B and C answer the same edge,
    so the respondent slopes relate linearly to the point coordinates.
    """

    i: int
    j: int
    interval_i: int
    interval_j: int
    a: PlanePoint
    b: PlanePoint
    c: PlanePoint

    def validate(self, grid: Grid) -> None:
        left, right = grid.breakpoint(self.i, self.interval_i - 1), grid.breakpoint(self.i, self.interval_i)
        bottom, top = grid.breakpoint(self.j, self.interval_j - 1), grid.breakpoint(self.j, self.interval_j)
        for pt in (self.a, self.b, self.c):
            if not (left <= pt.v_i <= right and bottom <= pt.v_j <= top):
                raise OracleFailure(f"point {pt} outside rectangle ({self.interval_i},{self.interval_j})")
        if self.b == self.a or self.c == self.a:
            raise OracleFailure("indifference points must differ from the pivot")
        if self.a.v_j == self.b.v_j or self.a.v_j == self.c.v_j:
            raise OracleFailure("degenerate pivot: zero height difference")


@dataclass(frozen=True)
class NrInfo:
    """The pivot point A sits one interval below the points B and C.

    interval_j names the lower of the two neighboring intervals on j;
    boundary is the breakpoint x_{j, interval_j} they share. B and C sit on
    the left edge of the upper rectangle, strictly above the boundary.
    """

    i: int
    j: int
    interval_i: int
    interval_j: int
    boundary: Fraction
    a: PlanePoint
    b: PlanePoint
    c: PlanePoint

    def validate(self, grid: Grid) -> None:
        if self.interval_j >= grid.segment_count(self.j):
            raise OracleFailure("no neighboring interval above")
        left, right = grid.breakpoint(self.i, self.interval_i - 1), grid.breakpoint(self.i, self.interval_i)
        lower = grid.breakpoint(self.j, self.interval_j - 1)
        upper = grid.breakpoint(self.j, self.interval_j + 1)
        if self.boundary != grid.breakpoint(self.j, self.interval_j):
            raise OracleFailure("boundary does not match the grid")
        if not (left <= self.a.v_i <= right and lower <= self.a.v_j <= self.boundary):
            raise OracleFailure("pivot outside the lower rectangle")
        for pt in (self.b, self.c):
            if pt.v_i != left:
                raise OracleFailure("answers must sit on the left edge")
            if not self.boundary < pt.v_j <= upper:
                raise OracleFailure("answer outside the upper interval band")


def single_rectangle(
    src: AnswerSource, i: int, j: int, interval_i: int, interval_j: int
) -> SrInfo:
    """Extract an SrInfo from rectangle (interval_i, interval_j) in <= 2 queries.

    The opening query walks both respondents from the bottom-right corner to
    the left edge. Whoever exits through the top is caught by a follow-up
    asked in the transposed direction (answered on criterion i).
    """
    grid = src.grid
    left, right = grid.breakpoint(i, interval_i - 1), grid.breakpoint(i, interval_i)
    bottom, top = grid.breakpoint(j, interval_j - 1), grid.breakpoint(j, interval_j)

    ans = src.answer(Query(i=i, j=j, q_i=right, q_j=bottom, p_i=left))
    a1, a2 = ans.low, ans.high

    if a2 is not None and a2 <= top:
        # both answers landed on the left edge
        info = SrInfo(
            i, j, interval_i, interval_j,
            a=PlanePoint(right, bottom),
            b=PlanePoint(left, a1),
            c=PlanePoint(left, a2),
        )
    elif a1 is not None and a1 <= top:
        # one respondent exits the top; pivot on the lower answer and ask back
        b1, b2 = _follow_up(src, i, j, q_j=a1, left=left, bottom=bottom)
        info = SrInfo(
            i, j, interval_i, interval_j,
            a=PlanePoint(left, a1),
            b=PlanePoint(b1, bottom),
            c=PlanePoint(b2, bottom),
        )
    else:
        # both exit the top; pivot on the top-left corner instead
        b1, b2 = _follow_up(src, i, j, q_j=top, left=left, bottom=bottom)
        info = SrInfo(
            i, j, interval_i, interval_j,
            a=PlanePoint(left, top),
            b=PlanePoint(b1, bottom),
            c=PlanePoint(b2, bottom),
        )
    info.validate(grid)
    return info


def _follow_up(
    src: AnswerSource, i: int, j: int, q_j: Fraction, left: Fraction, bottom: Fraction
) -> tuple[Fraction, Fraction]:
    """Ask from (left, q_j) down to the bottom edge; answers on criterion i."""
    ans = src.answer(Query(i=j, j=i, q_i=q_j, q_j=left, p_i=bottom))
    if ans.low is None or ans.high is None:
        raise OracleFailure("follow-up ran off the scale; answers are inconsistent")
    return ans.low, ans.high


def default_iteration_budget(slope: Fraction, step: Fraction) -> int:
    """Defensive cap for interactive sources that never settle."""
    product = slope * step
    return 64 + product.numerator.bit_length() + product.denominator.bit_length()


def neighboring_rectangles(
    src: AnswerSource,
    i: int,
    interval_i: int,
    j: int,
    interval_j: int,
    iteration_budget: int | None = None,
) -> NrInfo:
    """Probe until one answer stays in interval_j+1 while the pivot holds below.

    The probe point starts at the center of rectangle (interval_i, interval_j)
    and moves toward its top-left corner: too-shallow probes (an answer at or
    under the boundary) flatten the probe line, overshoots (an answer past the
    band above) shrink the horizontal offset. Each flattening at least halves
    the probe slope and each overshoot halves the offset, so the loop ends in
    logarithmically many queries for any fixed pair of respondents.
    """
    grid = src.grid
    left, right = grid.breakpoint(i, interval_i - 1), grid.breakpoint(i, interval_i)
    lower, boundary = grid.breakpoint(j, interval_j - 1), grid.breakpoint(j, interval_j)
    if interval_j >= grid.segment_count(j):
        raise ValueError("interval_j must have a neighbor above")
    upper = grid.breakpoint(j, interval_j + 1)

    step = (right - left) / 2
    slope = (boundary - lower) / (2 * step)
    if iteration_budget is None:
        iteration_budget = default_iteration_budget(slope, step)

    for _ in range(iteration_budget):
        probe_j = boundary - slope * step
        ans = src.answer(Query(i=i, j=j, q_i=left + step, q_j=probe_j, p_i=left))
        a1, a2 = ans.low, ans.high
        if a1 is not None and a1 < lower:
            raise OracleFailure("answer below the rectangle; respondents inconsistent")
        pivot_holds = a1 is None or a1 > boundary
        in_band = a2 is not None and a2 <= upper
        if pivot_holds and in_band:
            assert a1 is not None and a2 is not None  # in_band forces both
            info = NrInfo(
                i, j, interval_i, interval_j, boundary,
                a=PlanePoint(left + step, probe_j),
                b=PlanePoint(left, a1),
                c=PlanePoint(left, a2),
            )
            info.validate(grid)
            # the loop keeps slope > 0, so the pivot stays strictly below
            assert info.a.v_j < boundary
            return info
        if pivot_holds:
            step /= 2
        else:
            flattened = (boundary - a1) / (2 * step)
            # a zero slope would park the next probe on the boundary itself,
            # collapsing the cross-interval relation; halve instead
            slope = flattened if flattened > 0 else slope / 2
    raise IterationBudgetExceeded(f"no stable probe within {iteration_budget} iterations")
