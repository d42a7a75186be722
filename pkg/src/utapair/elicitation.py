"""End-to-end identification of the two hidden models.

The engine scans rectangles of the (1, j) planes until the respondents
disagree somewhere, anchors both unknown models on that rectangle, then
chains slope knowledge interval by interval: upward and downward along
both criteria of the initial pair, and criterion by criterion afterwards.
Every chaining step consumes one single-rectangle play plus one
neighboring-rectangles play and disambiguates them by enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    DegenerateError,
    PhiZeroError,
    SlopePair,
    nr_coefficients,
    solve_downward,
    solve_sr_nr,
    solve_two_sr,
    sr_coefficients,
)
from .model import Grid, UtaModel
from .oracle import AnswerSource, OracleFailure, RecordingSource
from .patterns import SrInfo, neighboring_rectangles, single_rectangle

Key = tuple[int, int]  # (criterion, interval), both 1-based
Rect = tuple[int, int, int, int]  # (crit_a, crit_b, interval_a, interval_b), crit_a < crit_b


class NoValidReferencePairError(RuntimeError):
    """No pair of known intervals with distinct cross-respondent ratios."""


@dataclass(frozen=True)
class UnanimityRecord:
    """A scanned rectangle where both respondents answered identically."""

    i: int
    j: int
    interval_i: int
    interval_j: int
    ratio: Fraction


@dataclass(frozen=True)
class FoundRectangle:
    i: int
    j: int
    interval_i: int
    interval_j: int
    info: SrInfo


@dataclass(frozen=True)
class AllUnanimous:
    records: tuple[UnanimityRecord, ...]


@dataclass
class ElicitationStats:
    query_count: int = 0
    breakdown: dict = field(default_factory=dict)
    first_pair: tuple[int, int] | None = None
    scanned: set = field(default_factory=set)
    new_info: set = field(default_factory=set)
    touched: set = field(default_factory=set)
    ref_deviations: int = 0
    degenerate_retries: int = 0


@dataclass
class ElicitationState:
    src: RecordingSource
    eps: Fraction = Fraction(0)
    known: dict[Key, SlopePair] = field(default_factory=dict)
    anchor: Key | None = None
    init_key: Key | None = None
    records: list[UnanimityRecord] = field(default_factory=list)
    stats: ElicitationStats = field(default_factory=ElicitationStats)

    @property
    def grid(self) -> Grid:
        return self.src.grid


@dataclass(frozen=True)
class ElicitationOutcome:
    """Result of a full run: either two distinct models or one shared one.

    Models are anchor-normalized and, for the two-model case, presented in
    a canonical order independent of any input labeling.
    """

    kind: str  # "two-models" or "identical-models"
    models: tuple[UtaModel, ...]
    stats: ElicitationStats
    transcript: tuple


def _rect(i: int, j: int, li: int, lj: int) -> Rect:
    return (i, j, li, lj) if i < j else (j, i, lj, li)


def _ratio(state: ElicitationState, key: Key) -> Fraction:
    a, b = state.known[key]
    return a / b


def _record_known(state: ElicitationState, key: Key, pair: SlopePair) -> None:
    existing = state.known.get(key)
    assert existing is None or existing == pair, f"slope map overwrite at {key}"
    state.known[key] = pair


def find_initial_rectangle(state: ElicitationState) -> FoundRectangle | AllUnanimous:
    """Scan (1, j) planes in growing squares until the respondents split.

    Every unanimous rectangle is recorded: the shared ratio is real
    information (both respondents satisfy it) and row/column records
    suffice to rebuild the common model when no split ever shows up.
    """
    grid = state.grid
    state.src.phase = "scan"
    for j in range(2, grid.criteria_count + 1):
        l1, lj = grid.segment_count(1), grid.segment_count(j)
        for t in range(1, max(l1, lj) + 1):
            squares: list[tuple[int, int]] = []
            if t <= lj:
                squares += [(a, t) for a in range(1, min(t - 1, l1) + 1)]
            if t <= l1:
                squares += [(t, b) for b in range(1, min(t, lj) + 1)]
            for ri, rj in squares:
                info = single_rectangle(state.src, 1, j, ri, rj)
                state.stats.scanned.add(_rect(1, j, ri, rj))
                if info.b == info.c:
                    ratio = sr_coefficients(info).ratio_low
                    state.records.append(UnanimityRecord(1, j, ri, rj, ratio))
                else:
                    return FoundRectangle(1, j, ri, rj, info)
    return AllUnanimous(tuple(state.records))


def initialize(state: ElicitationState, found: FoundRectangle) -> None:
    """Anchor both models on the found rectangle.

    The anchor interval gets slope 1 for both respondents; the split
    answers fix two distinct slopes on the other criterion, with the lower
    answer arbitrarily labeled "alpha" (the outcome is an unordered pair,
    so the choice is free but must stay consistent from here on).
    """
    if state.anchor is not None:
        raise RuntimeError("already initialized")
    coeffs = sr_coefficients(found.info)
    if coeffs.ratio_low == coeffs.ratio_high:
        raise ValueError("initialization needs a rectangle with split answers")
    one = Fraction(1)
    state.anchor = (found.i, found.interval_i)
    state.init_key = (found.j, found.interval_j)
    _record_known(state, state.anchor, (one, one))
    _record_known(state, state.init_key, (coeffs.ratio_low, coeffs.ratio_high))
    state.stats.first_pair = (found.i, found.j)
    rect = _rect(found.i, found.j, found.interval_i, found.interval_j)
    state.stats.new_info.add(rect)
    state.stats.touched.add(rect)


def _reference_candidates(
    state: ElicitationState, target_crit: int, adjacent: Key
) -> list[Key]:
    """Known intervals usable as references for a chain step.

    A reference is valid when its cross-respondent slope ratio differs from
    the ratio on the known interval adjacent to the target; otherwise the
    swapped assignment would be equally consistent. The anchor comes first,
    the rest in index order, so runs are deterministic.
    """
    adjacent_ratio = _ratio(state, adjacent)
    candidates = [
        key
        for key in sorted(state.known)
        if key[0] != target_crit and _ratio(state, key) != adjacent_ratio
    ]
    if state.anchor in candidates:
        candidates.remove(state.anchor)
        candidates.insert(0, state.anchor)
    return candidates


def _chain_step(
    state: ElicitationState,
    target: Key,
    adjacent: Key,
    upward: bool,
    preferred: Key | None,
) -> bool:
    """Identify one interval from the adjacent known one.

    Returns False when no valid reference exists or every one of them left
    the assignment ambiguous; the caller may retry once more intervals are
    known. Exact-answer sources make retries rare: they only occur around
    unanimity intervals, whose ratio collides with some reference's.
    """
    crit, interval = target
    candidates = _reference_candidates(state, crit, adjacent)
    for position, ref in enumerate(candidates):
        ref_crit, ref_interval = ref
        try:
            state.src.phase = "single_rectangle"
            sr_info = single_rectangle(state.src, ref_crit, crit, ref_interval, interval)
            state.src.phase = "neighboring_rectangles"
            nr_info = neighboring_rectangles(
                state.src,
                ref_crit,
                ref_interval,
                crit,
                interval - 1 if upward else interval,
            )
            sr = sr_coefficients(sr_info)
            nr = nr_coefficients(nr_info)
            if upward:
                result = solve_sr_nr(
                    sr, nr, ref=state.known[ref], prev=state.known[adjacent], eps=state.eps
                )
            else:
                result = solve_downward(
                    sr, nr, ref=state.known[ref], next_slopes=state.known[adjacent], eps=state.eps
                )
        except (DegenerateError, PhiZeroError):
            state.stats.degenerate_retries += 1
            continue
        _record_known(state, target, (result.slope_alpha, result.slope_beta))
        if preferred is not None and (ref != preferred or position != 0):
            state.stats.ref_deviations += 1
        state.stats.new_info.add(_rect(ref_crit, crit, ref_interval, interval))
        state.stats.touched.add(_rect(ref_crit, crit, ref_interval, interval))
        lower = interval - 1 if upward else interval
        state.stats.touched.add(_rect(ref_crit, crit, ref_interval, lower))
        state.stats.touched.add(_rect(ref_crit, crit, ref_interval, lower + 1))
        return True
    return False


# a chain walks one criterion away from a known interval, one step per entry
Chain = tuple[int, list[int], bool, Key | None]  # (criterion, targets, upward, preferred ref)


def _pair_chains(state: ElicitationState, i: int, j: int) -> list[Chain]:
    assert state.anchor is not None and state.init_key is not None
    grid = state.grid
    li, lj = state.anchor[1], state.init_key[1]
    chains: list[Chain] = [
        (j, list(range(lj + 1, grid.segment_count(j) + 1)), True, state.anchor),
        (i, list(range(li + 1, grid.segment_count(i) + 1)), True, state.init_key),
        (j, list(range(lj - 1, 0, -1)), False, state.anchor),
        (i, list(range(li - 1, 0, -1)), False, state.init_key),
    ]
    return [c for c in chains if c[1]]


def _chain_pass(state: ElicitationState, chains: list[Chain]) -> bool:
    """One pass over every chain, stepping each as far as it goes."""
    progressed = False
    for crit, targets, upward, preferred in chains:
        while targets:
            interval = targets[0]
            adjacent = (crit, interval - 1 if upward else interval + 1)
            if not _chain_step(state, (crit, interval), adjacent, upward, preferred):
                break
            targets.pop(0)
            progressed = True
    return progressed


def elicit_pair(state: ElicitationState, i: int, j: int) -> None:
    """Identify every interval of criteria i and j.

    Four chains run as passes: up then down on j, up then down on i. A
    chain blocked for lack of a valid reference waits for the sibling
    chains to widen the known map; a full pass without progress means the
    remaining intervals are not identifiable from these two criteria alone.
    """
    chains = _pair_chains(state, i, j)
    while chains:
        progressed = _chain_pass(state, chains)
        chains = [c for c in chains if c[1]]
        if chains and not progressed:
            blocked = [(crit, targets[0]) for crit, targets, _, _ in chains]
            raise DegenerateError(
                "no valid reference disambiguates the remaining intervals",
                {"blocked": blocked},
            )


def _init_criterion(state: ElicitationState, crit: int) -> bool:
    """Try to pin interval 1 of a criterion outside the initial pair.

    Two single-rectangle plays against two references with distinct
    cross-respondent ratios disambiguate each other. Returns False while
    no such reference pair is known yet.
    """
    assert state.anchor is not None
    anchor_ratio = _ratio(state, state.anchor)
    partners = [
        key
        for key in sorted(state.known)
        if key[0] != crit and key != state.anchor and _ratio(state, key) != anchor_ratio
    ]
    if not partners:
        return False
    state.src.phase = "single_rectangle"
    anchor_info = single_rectangle(
        state.src, state.anchor[0], crit, state.anchor[1], 1
    )
    anchor_rect = _rect(state.anchor[0], crit, state.anchor[1], 1)
    state.stats.new_info.add(anchor_rect)
    state.stats.touched.add(anchor_rect)
    for partner in partners:
        state.src.phase = "single_rectangle"
        partner_info = single_rectangle(state.src, partner[0], crit, partner[1], 1)
        rect = _rect(partner[0], crit, partner[1], 1)
        state.stats.new_info.add(rect)
        state.stats.touched.add(rect)
        try:
            result = solve_two_sr(
                sr_coefficients(anchor_info),
                sr_coefficients(partner_info),
                ref1=state.known[state.anchor],
                ref2=state.known[partner],
                eps=state.eps,
            )
        except DegenerateError:
            state.stats.degenerate_retries += 1
            continue
        _record_known(state, (crit, 1), (result.slope_alpha, result.slope_beta))
        if partner != partners[0]:
            state.stats.ref_deviations += 1
        return True
    return False


def elicit_remaining(state: ElicitationState, crit: int) -> None:
    """Identify a criterion outside the initial pair.

    Interval 1 is pinned by two single-rectangle plays, the rest chains
    upward. Resumable: already-known intervals are skipped.
    """
    grid = state.grid
    if (crit, 1) not in state.known and not _init_criterion(state, crit):
        raise NoValidReferencePairError(
            f"all known intervals share one ratio; criterion {crit} unreachable"
        )
    targets = [
        l for l in range(2, grid.segment_count(crit) + 1) if (crit, l) not in state.known
    ]
    chains: list[Chain] = [(crit, targets, True, None)] if targets else []
    while chains:
        progressed = _chain_pass(state, chains)
        chains = [c for c in chains if c[1]]
        if chains and not progressed:
            raise DegenerateError(
                "no valid reference disambiguates the remaining intervals",
                {"blocked": [(crit, targets[0]) for crit, targets, _, _ in chains]},
            )


def _build_model(state: ElicitationState, side: int) -> UtaModel:
    grid = state.grid
    slopes = tuple(
        tuple(state.known[(c, l)][side] for l in range(1, grid.segment_count(c) + 1))
        for c in range(1, grid.criteria_count + 1)
    )
    return UtaModel(grid, slopes)


def _reconstruct_identical(state: ElicitationState) -> UtaModel:
    """Rebuild the shared model from unanimity ratios.

    Row 1 of each plane gives the other criterion's slopes directly
    (the criterion-1 anchor slope is 1); column 1 of plane (1, 2) recovers
    the remaining criterion-1 slopes. Interior rectangles are redundant
    and double-checked.
    """
    grid = state.grid
    ratios = {(r.j, r.interval_i, r.interval_j): r.ratio for r in state.records}
    slopes: dict[Key, Fraction] = {(1, 1): Fraction(1)}
    for j in range(2, grid.criteria_count + 1):
        for lj in range(1, grid.segment_count(j) + 1):
            slopes[(j, lj)] = ratios[(j, 1, lj)]
    for li in range(2, grid.segment_count(1) + 1):
        slopes[(1, li)] = slopes[(2, 1)] / ratios[(2, li, 1)]
    for (j, li, lj), ratio in ratios.items():
        assert slopes[(j, lj)] == ratio * slopes[(1, li)], "inconsistent unanimity records"
    model_slopes = tuple(
        tuple(slopes[(c, l)] for l in range(1, grid.segment_count(c) + 1))
        for c in range(1, grid.criteria_count + 1)
    )
    return UtaModel(grid, model_slopes)


def _check_records(state: ElicitationState, models: tuple[UtaModel, ...]) -> None:
    for rec in state.records:
        for model in models:
            got = model.slope(rec.j, rec.interval_j) / model.slope(rec.i, rec.interval_i)
            if got != rec.ratio:
                raise OracleFailure(
                    f"recovered models contradict the unanimous rectangle "
                    f"({rec.i},{rec.j},{rec.interval_i},{rec.interval_j})"
                )


def run(source: AnswerSource, eps: Fraction = Fraction(0)) -> ElicitationOutcome:
    """Identify both models (or the shared one) from an answer source."""
    recorder = RecordingSource(source)
    state = ElicitationState(src=recorder, eps=eps)
    scan = find_initial_rectangle(state)

    if isinstance(scan, AllUnanimous):
        model = _reconstruct_identical(state)
        state.stats.query_count = recorder.total
        state.stats.breakdown = dict(recorder.counts)
        return ElicitationOutcome(
            kind="identical-models",
            models=(model,),
            stats=state.stats,
            transcript=tuple(recorder.transcript),
        )

    initialize(state, scan)

    # one global work loop: the four chains of the initial pair, plus an
    # init + upward chain per remaining criterion. Interleaving matters: a
    # chain blocked on reference-ratio collisions can resume once another
    # criterion contributes a reference with a distinct ratio.
    chains = _pair_chains(state, scan.i, scan.j)
    inits = [
        c for c in range(1, state.grid.criteria_count + 1) if c not in (scan.i, scan.j)
    ]
    while chains or inits:
        progressed = False
        for crit in list(inits):
            if _init_criterion(state, crit):
                inits.remove(crit)
                targets = list(range(2, state.grid.segment_count(crit) + 1))
                if targets:
                    chains.append((crit, targets, True, None))
                progressed = True
        progressed = _chain_pass(state, chains) or progressed
        chains = [c for c in chains if c[1]]
        if (chains or inits) and not progressed:
            if chains:
                blocked = [(crit, targets[0]) for crit, targets, _, _ in chains]
                blocked += [(crit, 1) for crit in inits]
                raise DegenerateError(
                    "no valid reference disambiguates the remaining intervals",
                    {"blocked": blocked},
                )
            raise NoValidReferencePairError(
                "all known intervals share one cross-respondent ratio; "
                f"criteria {inits} unreachable"
            )

    model_alpha, model_beta = _build_model(state, 0), _build_model(state, 1)
    models = tuple(sorted((model_alpha, model_beta), key=lambda m: m.slopes))
    _check_records(state, models)
    state.stats.query_count = recorder.total
    state.stats.breakdown = dict(recorder.counts)
    return ElicitationOutcome(
        kind="two-models",
        models=models,
        stats=state.stats,
        transcript=tuple(recorder.transcript),
    )
