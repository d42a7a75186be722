"""Query answering, answer-pair anonymization and transcripts."""
from fractions import Fraction as F

import pytest

from utapair.oracle import (
    AnswerPair,
    Query,
    ReplayMismatchError,
    ReplayTranscript,
    RecordingSource,
    SimulatedPair,
    Transcript,
    TranscriptRecord,
    answer_indifference,
    simulated_answer,
)


def q(i, j, q_i, q_j, p_i):
    return Query(i, j, F(q_i), F(q_j), F(p_i))


def test_answer_indifference_basic(alpha):
    # u1(2) + u2(0) = 2; dropping crit1 to 0 must be repaid on crit2: u2(a)=2
    assert answer_indifference(alpha, q(1, 2, 2, 0, 0)) == 2
    # u1(3) + u2(2) = 6; drop to 1: u2(a) = 5 -> a = 3
    assert answer_indifference(alpha, q(1, 2, 3, 2, 1)) == 3
    # transposed criteria direction
    assert answer_indifference(alpha, q(2, 1, 2, 0, 0)) == 2


def test_answer_indifference_off_scale(alpha):
    # u1(4) + u2(3) = 11; drop to 0: u2(a) = 11 > 8 -> off scale
    assert answer_indifference(alpha, q(1, 2, 4, 3, 0)) is None


def test_answer_indifference_gain_moves_down(alpha):
    # raising crit1 from 0 to 2 means crit2 must fall: u2(a) = 5 - 2 = 3
    assert answer_indifference(alpha, q(1, 2, 0, 3, 2)) == F(7, 3)


def test_query_validation(grid22):
    with pytest.raises(ValueError):
        q(1, 1, 1, 1, 0).validate(grid22)  # two distinct criteria
    with pytest.raises(ValueError):
        q(1, 2, 5, 0, 0).validate(grid22)  # q_i on scale
    with pytest.raises(IndexError):
        q(1, 3, 1, 1, 0).validate(grid22)  # criterion index in range
    q(1, 2, 4, 4, 0).validate(grid22)


def test_answer_pair_sorts_none_last():
    pair = AnswerPair.of(None, F(1))
    assert pair.low == F(1) and pair.high is None
    pair = AnswerPair.of(F(3), F(2))
    assert (pair.low, pair.high) == (F(2), F(3))
    pair = AnswerPair.of(None, None)
    assert pair.low is None and pair.high is None


def test_simulated_answer_is_order_free(alpha, beta):
    query = q(1, 2, 2, 0, 0)
    assert simulated_answer(alpha, beta, query) == simulated_answer(beta, alpha, query)
    # alpha repays u=2 at crit2 value 2; beta repays u=2 at 1
    assert simulated_answer(alpha, beta, query) == AnswerPair(F(1), F(2))


def test_transcript_round_trip(alpha, beta):
    source = SimulatedPair(alpha, beta)
    recorder = RecordingSource(source)
    queries = [q(1, 2, 2, 0, 0), q(1, 2, 4, 3, 0), q(2, 1, 2, 0, 0)]
    for query in queries:
        recorder.answer(query)
    text = recorder.transcript.to_jsonl()
    loaded = Transcript.from_jsonl(text)
    assert list(loaded) == list(recorder.transcript)
    assert loaded.to_jsonl() == text


def test_replay_transcript_answers_and_verifies(alpha, beta, grid22):
    recorder = RecordingSource(SimulatedPair(alpha, beta))
    queries = [q(1, 2, 2, 0, 0), q(1, 2, 3, 2, 1)]
    answers = [recorder.answer(query) for query in queries]
    replay = ReplayTranscript(grid22, recorder.transcript)
    assert replay.answer(queries[0]) == answers[0]
    with pytest.raises(ReplayMismatchError):
        replay.answer(q(1, 2, 0, 3, 2))  # diverges from the recording
    replay2 = ReplayTranscript(grid22, recorder.transcript)
    replay2.answer(queries[0])
    replay2.answer(queries[1])
    with pytest.raises(ReplayMismatchError):
        replay2.answer(queries[0])  # exhausted


def test_recording_source_counts_phases(alpha, beta):
    recorder = RecordingSource(SimulatedPair(alpha, beta))
    recorder.phase = "scan"
    recorder.answer(q(1, 2, 2, 0, 0))
    recorder.phase = "single_rectangle"
    recorder.answer(q(1, 2, 4, 3, 0))
    recorder.answer(q(1, 2, 3, 2, 1))
    assert recorder.counts == {"scan": 1, "single_rectangle": 2}
    assert recorder.total == 3


def test_transcript_serializes_off_scale(alpha, grid22):
    record = TranscriptRecord(q(1, 2, 4, 3, 0), AnswerPair(F(5, 2), None))
    transcript = Transcript([record])
    text = transcript.to_jsonl()
    assert '"2.5"' in text and "null" in text
    assert list(Transcript.from_jsonl(text)) == [record]
