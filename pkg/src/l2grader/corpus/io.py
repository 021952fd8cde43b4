"""JSON Lines readers and writers for corpora and alignment files."""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import DataError
from .types import (
    AlignmentSystem,
    AnnotatedUtterance,
    Language,
    Level,
    PhoneAlignment,
    PhoneSegment,
    QuestionKey,
    ScoreVector,
    Session,
)


def _question_from_dict(data: dict) -> QuestionKey:
    try:
        return QuestionKey(
            language=Language(data["language"]),
            level=Level(data["level"]),
            session=Session(data["session"]),
            question_id=str(data["question_id"]),
        )
    except (KeyError, ValueError) as exc:
        raise DataError(f"bad question key {data!r}: {exc}") from exc


def utterance_from_dict(data: dict) -> AnnotatedUtterance:
    scores = None
    if data.get("scores") is not None:
        scores = ScoreVector.from_sequence(data["scores"])
        if "total" in data and data["total"] is not None and data["total"] != scores.total:
            raise DataError(
                f"utterance {data.get('utterance_id')!r}: total {data['total']} "
                f"does not equal the sum of indicators {scores.total}"
            )
    try:
        return AnnotatedUtterance(
            utterance_id=str(data["utterance_id"]),
            speaker_id=str(data["speaker_id"]),
            question=_question_from_dict(data["question"]),
            raw_text=str(data["raw_text"]),
            scores=scores,
        )
    except KeyError as exc:
        raise DataError(f"utterance record missing field {exc}") from exc


def utterance_to_dict(utt: AnnotatedUtterance) -> dict:
    return {
        "utterance_id": utt.utterance_id,
        "speaker_id": utt.speaker_id,
        "question": {
            "language": utt.question.language.value,
            "level": utt.question.level.value,
            "session": utt.question.session.value,
            "question_id": utt.question.question_id,
        },
        "raw_text": utt.raw_text,
        "scores": list(utt.scores.as_tuple()) if utt.scores else None,
        "total": utt.scores.total if utt.scores else None,
    }


def read_corpus(path) -> list:
    """Load a corpus JSONL file; utterance ids must be unique."""
    utterances = []
    seen = set()
    for lineno, record in _iter_jsonl(path):
        utt = utterance_from_dict(record)
        if utt.utterance_id in seen:
            raise DataError(f"{path}:{lineno}: duplicate utterance_id {utt.utterance_id!r}")
        seen.add(utt.utterance_id)
        utterances.append(utt)
    return utterances


def write_corpus(path, utterances) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for utt in utterances:
            handle.write(json.dumps(utterance_to_dict(utt), ensure_ascii=False, sort_keys=True))
            handle.write("\n")


def alignment_from_dict(data: dict) -> PhoneAlignment:
    try:
        segments = tuple(
            PhoneSegment(
                phone=str(seg["phone"]),
                n_frames=int(seg["n_frames"]),
                mean_log_likelihood=float(seg["mean_log_likelihood"]),
            )
            for seg in data["segments"]
        )
        return PhoneAlignment(
            utterance_id=str(data["utterance_id"]),
            system=AlignmentSystem(data["system"]),
            segments=segments,
        )
    except (KeyError, ValueError) as exc:
        raise DataError(f"bad alignment record: {exc}") from exc


def alignment_to_dict(alignment: PhoneAlignment) -> dict:
    return {
        "utterance_id": alignment.utterance_id,
        "system": alignment.system.value,
        "segments": [
            {
                "phone": s.phone,
                "n_frames": s.n_frames,
                "mean_log_likelihood": s.mean_log_likelihood,
            }
            for s in alignment.segments
        ],
    }


def read_alignments(path) -> dict:
    """Load an alignment JSONL file keyed by (utterance_id, system)."""
    alignments = {}
    for lineno, record in _iter_jsonl(path):
        alignment = alignment_from_dict(record)
        key = (alignment.utterance_id, alignment.system)
        if key in alignments:
            raise DataError(f"{path}:{lineno}: duplicate alignment for {key}")
        alignments[key] = alignment
    return alignments


def write_alignments(path, alignments) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for alignment in alignments:
            handle.write(json.dumps(alignment_to_dict(alignment), sort_keys=True))
            handle.write("\n")


def read_text_lines(path) -> list:
    """Plain UTF-8 text, one sentence per line; blank lines dropped."""
    with open(path, "r", encoding="utf-8") as handle:
        return [line.strip() for line in handle if line.strip()]


def _iter_jsonl(path):
    path = Path(path)
    if not path.exists():
        raise DataError(f"file not found: {path}")
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
