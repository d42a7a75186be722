"""Scenario files, random generation, and simulated-run reports.

A scenario bundles a grid with two ground-truth models. All file payloads
carry rationals as strings ("2.5" or "8/3"); loading re-validates every
structural invariant.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import DegenerateError
from .elicitation import ElicitationOutcome, NoValidReferencePairError, run
from .model import (
    CriterionScale,
    Grid,
    UtaModel,
    format_rational,
    models_equivalent,
    parse_rational,
)
from .oracle import (
    AnswerSource,
    OracleFailure,
    RecordingSource,
    ReplayTranscript,
    SimulatedPair,
    Transcript,
)


def grid_to_payload(grid: Grid) -> dict:
    return {
        "criteria": [
            {"name": s.name, "breakpoints": [format_rational(x) for x in s.breakpoints]}
            for s in grid.scales
        ]
    }


def grid_from_payload(payload: dict) -> Grid:
    return Grid(
        tuple(
            CriterionScale(
                name=str(c["name"]),
                breakpoints=tuple(parse_rational(x) for x in c["breakpoints"]),
            )
            for c in payload["criteria"]
        )
    )


def model_to_payload(model: UtaModel) -> dict:
    return {
        "slopes": {
            scale.name: [format_rational(g) for g in per_crit]
            for scale, per_crit in zip(model.grid.scales, model.slopes)
        }
    }


def model_from_payload(grid: Grid, payload: dict) -> UtaModel:
    return UtaModel(
        grid,
        tuple(
            tuple(parse_rational(g) for g in payload["slopes"][scale.name])
            for scale in grid.scales
        ),
    )


@dataclass(frozen=True)
class Scenario:
    grid: Grid
    models: tuple[UtaModel, UtaModel]
    seed: int | None = None

    def to_payload(self) -> dict:
        payload = {
            "grid": grid_to_payload(self.grid),
            "models": [model_to_payload(m) for m in self.models],
        }
        if self.seed is not None:
            payload["seed"] = self.seed
        return payload

    @staticmethod
    def from_payload(payload: dict) -> "Scenario":
        grid = grid_from_payload(payload["grid"])
        models = tuple(model_from_payload(grid, m) for m in payload["models"])
        if len(models) != 2:
            raise ValueError("a scenario holds exactly two models")
        return Scenario(grid, models, payload.get("seed"))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_payload(), sort_keys=True, indent=2) + "\n")

    @staticmethod
    def load(path: str | Path) -> "Scenario":
        return Scenario.from_payload(json.loads(Path(path).read_text()))


def _random_model(rng: random.Random, grid: Grid, slope_den: int, slope_max_num: int) -> UtaModel:
    slopes = tuple(
        tuple(
            Fraction(rng.randint(1, slope_max_num), slope_den)
            for _ in range(scale.segment_count)
        )
        for scale in grid.scales
    )
    return UtaModel(grid, slopes)


def generate_scenario(
    criteria: int,
    segments: list[int],
    seed: int,
    slope_den: int = 4,
    slope_max_num: int = 12,
    allow_identical: bool = False,
    identical: bool = False,
) -> Scenario:
    """Sample a random scenario, deterministic in the seed.

    Breakpoints start at 0 and climb by random half-integer steps; slopes
    are uniform on {1..slope_max_num}/slope_den. Equivalent model pairs are
    resampled unless explicitly allowed; ``identical`` duplicates one model.
    """
    if len(segments) != criteria:
        raise ValueError("one segment count per criterion required")
    rng = random.Random(seed)
    scales = []
    for index, count in enumerate(segments, start=1):
        points = [Fraction(0)]
        for _ in range(count):
            points.append(points[-1] + Fraction(rng.randint(1, 4), 2))
        scales.append(CriterionScale(f"crit{index}", tuple(points)))
    grid = Grid(tuple(scales))

    first = _random_model(rng, grid, slope_den, slope_max_num)
    if identical:
        return Scenario(grid, (first, first), seed)
    for _ in range(1000):
        second = _random_model(rng, grid, slope_den, slope_max_num)
        if allow_identical or not models_equivalent(first, second):
            return Scenario(grid, (first, second), seed)
    raise RuntimeError("could not sample a non-equivalent pair")


@dataclass(frozen=True)
class RunReport:
    """Deterministic summary of one elicitation run."""

    payload: dict

    def to_json(self) -> str:
        return json.dumps(self.payload, sort_keys=True, indent=2) + "\n"

    @property
    def outcome(self) -> str:
        return self.payload["outcome"]

    @property
    def verdict(self) -> str | None:
        return self.payload["verdict"]


def _verdict(outcome: ElicitationOutcome, scenario: Scenario) -> str:
    truth_a, truth_b = scenario.models
    truth_identical = models_equivalent(truth_a, truth_b)
    if outcome.kind == "identical-models":
        if truth_identical and models_equivalent(outcome.models[0], truth_a):
            return "exact"
        return "mismatch"
    if truth_identical:
        return "mismatch"
    ra, rb = outcome.models
    straight = models_equivalent(ra, truth_a) and models_equivalent(rb, truth_b)
    crossed = models_equivalent(ra, truth_b) and models_equivalent(rb, truth_a)
    return "exact" if straight or crossed else "mismatch"


def outcome_labels(outcome: ElicitationOutcome) -> tuple[str, ...]:
    return ("dm-a", "dm-b") if outcome.kind == "two-models" else ("shared",)


def outcome_to_payload(outcome: ElicitationOutcome, grid: Grid) -> dict:
    """Ground-truth-free run summary shared by reports and the service."""
    stats = outcome.stats
    return {
        "outcome": outcome.kind,
        "grid": grid_to_payload(grid),
        "tables": [
            {"label": label, **model_to_payload(model)}
            for label, model in zip(outcome_labels(outcome), outcome.models)
        ],
        "query_count": stats.query_count,
        "breakdown": dict(sorted(stats.breakdown.items())),
        "exploited": {
            "first_pair": list(stats.first_pair) if stats.first_pair else None,
            "new_info_rectangles": sorted(map(list, stats.new_info)),
            "touched_rectangles": sorted(map(list, stats.touched)),
            "scanned_rectangles": sorted(map(list, stats.scanned)),
            "reference_deviations": stats.ref_deviations,
            "degenerate_retries": stats.degenerate_retries,
        },
    }


def execute(scenario: Scenario, replay: Transcript | None = None) -> tuple[RunReport, Transcript]:
    """Run the engine against the scenario (or a replayed transcript).

    Degenerate geometry is reported, not raised: the report carries the
    failure context and the verdict stays "degenerate".
    """
    base: AnswerSource
    if replay is not None:
        base = ReplayTranscript(scenario.grid, replay)
    else:
        base = SimulatedPair(*scenario.models)
    recorder = RecordingSource(base)
    try:
        outcome = run(recorder)
    except (DegenerateError, NoValidReferencePairError, OracleFailure) as exc:
        payload = degenerate_payload(scenario.grid, exc, recorder.total)
        payload["verdict"] = "degenerate"
        return RunReport(payload), recorder.transcript
    payload = outcome_to_payload(outcome, scenario.grid)
    payload["verdict"] = _verdict(outcome, scenario)
    return RunReport(payload), recorder.transcript


def degenerate_payload(grid: Grid, exc: Exception, query_count: int) -> dict:
    return {
        "outcome": "degenerate",
        "grid": grid_to_payload(grid),
        "tables": [],
        "query_count": query_count,
        "breakdown": {},
        "exploited": None,
        "error": {
            "message": str(exc),
            "context": _json_safe(getattr(exc, "context", {})),
        },
    }


def _json_safe(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, set):
        return sorted(_json_safe(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value
