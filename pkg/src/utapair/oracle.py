"""Indifference queries and the anonymized answer channel.

A query fixes two criteria (i, j) and three coordinates: the reference
option (q_i, q_j) and the probe value p_i on criterion i. The answer is
the value a_j making (p_i, a_j) exactly as good as (q_i, q_j), or None
when no value on j's scale can compensate. Two respondents answer every
query; their answers come back as an unordered sorted pair, so nothing
ties an answer to a respondent.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Protocol

from .model import Grid, UtaModel, format_rational, parse_rational


class OracleFailure(RuntimeError):
    """An answer is inconsistent with the model class (or missing)."""


class ReplayMismatchError(RuntimeError):
    """A replayed transcript diverged from the queries being asked."""


@dataclass(frozen=True)
class Query:
    """Indifference question on the (i, j) plane, answered on j."""

    i: int
    j: int
    q_i: Fraction
    q_j: Fraction
    p_i: Fraction

    def validate(self, grid: Grid) -> None:
        if self.i == self.j:
            raise ValueError("a query spans two distinct criteria")
        si, sj = grid.scale(self.i), grid.scale(self.j)
        for scale, x in ((si, self.q_i), (si, self.p_i), (sj, self.q_j)):
            if not scale.contains(x):
                raise ValueError(f"{x} outside {scale.name!r} scale")


@dataclass(frozen=True)
class AnswerPair:
    """Sorted anonymous answers; None (no compensation possible) sorts last."""

    low: Fraction | None
    high: Fraction | None

    def __post_init__(self) -> None:
        if self.low is None and self.high is not None:
            raise ValueError("None sorts after every value")
        if self.low is not None and self.high is not None and self.low > self.high:
            raise ValueError("answers must be sorted")

    @staticmethod
    def of(a: Fraction | None, b: Fraction | None) -> "AnswerPair":
        first, second = sorted((a, b), key=lambda v: (v is None, v))
        return AnswerPair(first, second)


def answer_indifference(model: UtaModel, query: Query) -> Fraction | None:
    """The unique truthful answer of one respondent, None when off-scale."""
    query.validate(model.grid)
    target = (
        model.eval_marginal(query.i, query.q_i)
        + model.eval_marginal(query.j, query.q_j)
        - model.eval_marginal(query.i, query.p_i)
    )
    return model.invert_marginal(query.j, target)


def simulated_answer(model_a: UtaModel, model_b: UtaModel, query: Query) -> AnswerPair:
    return AnswerPair.of(
        answer_indifference(model_a, query), answer_indifference(model_b, query)
    )


class AnswerSource(Protocol):
    """Anything that can answer queries on a fixed grid."""

    @property
    def grid(self) -> Grid: ...

    def answer(self, query: Query) -> AnswerPair: ...


@dataclass(frozen=True)
class TranscriptRecord:
    query: Query
    answers: AnswerPair


class Transcript:
    """Append-only record of every query with its anonymized answers."""

    def __init__(self, records: Iterable[TranscriptRecord] = ()) -> None:
        self.records: list[TranscriptRecord] = list(records)

    def append(self, record: TranscriptRecord) -> None:
        self.records.append(record)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def to_jsonl(self) -> str:
        lines = []
        for rec in self.records:
            q = rec.query
            lines.append(
                json.dumps(
                    {
                        "query": {
                            "i": q.i,
                            "j": q.j,
                            "q_i": format_rational(q.q_i),
                            "q_j": format_rational(q.q_j),
                            "p_i": format_rational(q.p_i),
                        },
                        "answers": [
                            None if v is None else format_rational(v)
                            for v in (rec.answers.low, rec.answers.high)
                        ],
                    },
                    sort_keys=True,
                )
            )
        return "".join(line + "\n" for line in lines)

    @staticmethod
    def from_jsonl(text: str) -> "Transcript":
        records = []
        for line in text.splitlines():
            if not line.strip():
                continue
            raw = json.loads(line)
            q = raw["query"]
            query = Query(
                i=int(q["i"]),
                j=int(q["j"]),
                q_i=parse_rational(q["q_i"]),
                q_j=parse_rational(q["q_j"]),
                p_i=parse_rational(q["p_i"]),
            )
            a, b = raw["answers"]
            pair = AnswerPair.of(
                None if a is None else parse_rational(a),
                None if b is None else parse_rational(b),
            )
            records.append(TranscriptRecord(query, pair))
        return Transcript(records)


class SimulatedPair:
    """Answer source backed by two ground-truth models on one grid."""

    def __init__(self, model_a: UtaModel, model_b: UtaModel) -> None:
        if model_a.grid != model_b.grid:
            raise ValueError("both models must share the grid")
        self.model_a = model_a
        self.model_b = model_b

    @property
    def grid(self) -> Grid:
        return self.model_a.grid

    def answer(self, query: Query) -> AnswerPair:
        return simulated_answer(self.model_a, self.model_b, query)


class ReplayTranscript:
    """Answer source replaying a previous transcript, verifying each query."""

    def __init__(self, grid: Grid, transcript: Transcript) -> None:
        self._grid = grid
        self._records = list(transcript.records)
        self._cursor = 0

    @property
    def grid(self) -> Grid:
        return self._grid

    def answer(self, query: Query) -> AnswerPair:
        if self._cursor >= len(self._records):
            raise ReplayMismatchError("transcript exhausted")
        rec = self._records[self._cursor]
        if rec.query != query:
            raise ReplayMismatchError(
                f"query #{self._cursor} diverged: expected {rec.query}, got {query}"
            )
        self._cursor += 1
        return rec.answers


class RecordingSource:
    """Wraps a source; records the transcript and counts queries per phase."""

    def __init__(self, base: AnswerSource) -> None:
        self.base = base
        self.transcript = Transcript()
        self.phase = "other"
        self.counts: dict[str, int] = {}

    @property
    def grid(self) -> Grid:
        return self.base.grid

    @property
    def total(self) -> int:
        return len(self.transcript)

    def answer(self, query: Query) -> AnswerPair:
        pair = self.base.answer(query)
        self.transcript.append(TranscriptRecord(query, pair))
        self.counts[self.phase] = self.counts.get(self.phase, 0) + 1
        return pair
