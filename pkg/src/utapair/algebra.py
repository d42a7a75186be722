"""Slope relations carried by query-play results, and their disambiguation.

An SrInfo pins, for each respondent, the ratio between the target-interval
slope and a reference-interval slope. An NrInfo pins an affine relation
between the slope above a breakpoint, the reference slope, and the slope
below. Which respondent owns which coefficient pair is unknown; the solvers
enumerate the four possible assignments and keep the consistent ones.

Bit convention: assignment bit 1 means respondent "alpha" takes the
coefficients attached to the lower sorted answer.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .patterns import NrInfo, SrInfo

SlopePair = tuple[Fraction, Fraction]  # (alpha, beta)


class DegenerateGeometryError(ValueError):
    """Info points cannot carry a slope relation (zero/negative spans)."""


class DegenerateError(RuntimeError):
    """Several assignments survive with different slope outcomes."""

    def __init__(self, message: str, context: dict | None = None) -> None:
        super().__init__(message)
        self.context = context or {}


class PhiZeroError(RuntimeError):
    """Downward relation unusable: the carry coefficient vanished."""


@dataclass(frozen=True)
class SrCoefficients:
    """gamma_target = ratio * gamma_ref, one ratio per sorted answer."""

    ratio_low: Fraction
    ratio_high: Fraction


@dataclass(frozen=True)
class NrCoefficients:
    """gamma_above = ref_weight * gamma_ref + prev_weight * gamma_below."""

    ref_weight_low: Fraction
    prev_weight_low: Fraction
    ref_weight_high: Fraction
    prev_weight_high: Fraction


@dataclass(frozen=True)
class SlopePairResult:
    """Disambiguated slopes for one interval, labeled per respondent."""

    slope_alpha: Fraction
    slope_beta: Fraction
    assignment: tuple[int, ...]
    unanimous: bool


def sr_coefficients(info: SrInfo) -> SrCoefficients:
    ratios = []
    for pt in (info.b, info.c):
        height = info.a.v_j - pt.v_j
        if height == 0:
            raise DegenerateGeometryError("answer at the pivot height")
        ratio = (pt.v_i - info.a.v_i) / height
        if ratio <= 0:
            raise DegenerateGeometryError(f"nonpositive slope ratio {ratio}")
        ratios.append(ratio)
    return SrCoefficients(ratio_low=ratios[0], ratio_high=ratios[1])


def nr_coefficients(info: NrInfo) -> NrCoefficients:
    weights = []
    for pt in (info.b, info.c):
        span = pt.v_j - info.boundary
        if span <= 0:
            raise DegenerateGeometryError("answer not above the boundary")
        ref_weight = (info.a.v_i - pt.v_i) / span
        if ref_weight <= 0:
            raise DegenerateGeometryError("pivot has no horizontal offset")
        prev_weight = (info.a.v_j - info.boundary) / span  # <= 0; 0 iff A on the boundary
        weights.append((ref_weight, prev_weight))
    return NrCoefficients(
        ref_weight_low=weights[0][0],
        prev_weight_low=weights[0][1],
        ref_weight_high=weights[1][0],
        prev_weight_high=weights[1][1],
    )


def _pick(low, high, bit: int):
    """Coefficients for (alpha, beta): alpha takes the low one iff bit is 1."""
    return (low, high) if bit else (high, low)


def _select(
    candidates: list[tuple[tuple[int, ...], SlopePair, Fraction]],
    eps: Fraction,
    unanimous: bool,
    context: dict,
) -> SlopePairResult:
    """Keep assignments within eps, then the smallest residual; ties on
    residual with different outcomes are genuinely ambiguous."""
    feasible = [c for c in candidates if c[2] <= eps]
    if not feasible:
        raise DegenerateError("no assignment consistent with the answers", context)
    best = min(c[2] for c in feasible)
    winners = [c for c in feasible if c[2] == best]
    outcomes = {c[1] for c in winners}
    if len(outcomes) > 1:
        raise DegenerateError(
            "ambiguous assignment: several consistent slope pairs",
            {**context, "outcomes": sorted(outcomes)},
        )
    assignment, pair, _ = winners[0]
    return SlopePairResult(pair[0], pair[1], assignment, unanimous)


def solve_two_sr(
    sr1: SrCoefficients,
    sr2: SrCoefficients,
    ref1: SlopePair,
    ref2: SlopePair,
    eps: Fraction = Fraction(0),
) -> SlopePairResult:
    """Intersect two single-rectangle relations against two references.

    Sound only when the references have distinct cross-respondent ratios;
    equal ratios make the swapped assignment equally consistent.
    """
    candidates = []
    for k1 in (0, 1):
        c1 = _pick(sr1.ratio_low, sr1.ratio_high, k1)
        for k2 in (0, 1):
            c2 = _pick(sr2.ratio_low, sr2.ratio_high, k2)
            v1 = (c1[0] * ref1[0], c1[1] * ref1[1])
            v2 = (c2[0] * ref2[0], c2[1] * ref2[1])
            if min(*v1, *v2) <= 0:
                continue
            residual = max(abs(v1[0] - v2[0]), abs(v1[1] - v2[1]))
            candidates.append(((k1, k2), v1, residual))
    unanimous = sr1.ratio_low == sr1.ratio_high and sr2.ratio_low == sr2.ratio_high
    return _select(candidates, eps, unanimous, {"solver": "two_sr"})


def solve_sr_nr(
    sr: SrCoefficients,
    nr: NrCoefficients,
    ref: SlopePair,
    prev: SlopePair,
    eps: Fraction = Fraction(0),
) -> SlopePairResult:
    """Disambiguate the slope above a breakpoint from one SR and one NR.

    Sound only when the cross-respondent ratio of the reference differs
    from the ratio on the interval below the target.
    """
    candidates = []
    for k1 in (0, 1):
        ratios = _pick(sr.ratio_low, sr.ratio_high, k1)
        for k2 in (0, 1):
            refw = _pick(nr.ref_weight_low, nr.ref_weight_high, k2)
            prevw = _pick(nr.prev_weight_low, nr.prev_weight_high, k2)
            v1 = (ratios[0] * ref[0], ratios[1] * ref[1])
            v2 = (
                refw[0] * ref[0] + prevw[0] * prev[0],
                refw[1] * ref[1] + prevw[1] * prev[1],
            )
            if min(*v1, *v2) <= 0:
                continue
            residual = max(abs(v1[0] - v2[0]), abs(v1[1] - v2[1]))
            candidates.append(((k1, k2), v1, residual))
    unanimous = (
        sr.ratio_low == sr.ratio_high
        and (nr.ref_weight_low, nr.prev_weight_low)
        == (nr.ref_weight_high, nr.prev_weight_high)
    )
    return _select(candidates, eps, unanimous, {"solver": "sr_nr"})


def solve_downward(
    sr: SrCoefficients,
    nr: NrCoefficients,
    ref: SlopePair,
    next_slopes: SlopePair,
    eps: Fraction = Fraction(0),
) -> SlopePairResult:
    """Recover the slope below a breakpoint given the slope above.

    The NR relation is solved for the lower slope, which needs a nonzero
    carry coefficient (the pivot must sit strictly below the boundary).
    """
    if nr.prev_weight_low == 0 or nr.prev_weight_high == 0:
        raise PhiZeroError("carry coefficient is zero; pivot sat on the boundary")
    candidates = []
    for k1 in (0, 1):
        ratios = _pick(sr.ratio_low, sr.ratio_high, k1)
        for k2 in (0, 1):
            refw = _pick(nr.ref_weight_low, nr.ref_weight_high, k2)
            prevw = _pick(nr.prev_weight_low, nr.prev_weight_high, k2)
            v1 = (ratios[0] * ref[0], ratios[1] * ref[1])
            v2 = (
                (next_slopes[0] - refw[0] * ref[0]) / prevw[0],
                (next_slopes[1] - refw[1] * ref[1]) / prevw[1],
            )
            if min(*v1, *v2) <= 0:
                continue
            residual = max(abs(v1[0] - v2[0]), abs(v1[1] - v2[1]))
            candidates.append(((k1, k2), v1, residual))
    unanimous = (
        sr.ratio_low == sr.ratio_high
        and (nr.ref_weight_low, nr.prev_weight_low)
        == (nr.ref_weight_high, nr.prev_weight_high)
    )
    return _select(candidates, eps, unanimous, {"solver": "downward"})
