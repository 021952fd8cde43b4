"""Data model for annotated utterances, transcripts and phone alignments."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..errors import DataError

INDICATOR_NAMES = (
    "answer_relevance",
    "syntactical_correctness",
    "lexical_properties",
    "pronunciation",
    "fluency",
    "communicative_skills",
)

SILENCE_LABELS = frozenset({"sil", "nsn", "spn"})


class Language(str, enum.Enum):
    ENGLISH = "English"
    GERMAN = "German"


class Level(str, enum.Enum):
    A1 = "A1"
    A2 = "A2"
    B1 = "B1"


class Session(str, enum.Enum):
    S1 = "S1"
    S2 = "S2"


class SourceLanguage(str, enum.Enum):
    TARGET = "target"
    ITALIAN = "Italian"
    ENGLISH = "English"
    GERMAN = "German"
    UNKNOWN = "unknown"


class TokenFlag(str, enum.Enum):
    HESITATION = "hesitation"
    BADLY_PRONOUNCED = "badly_pronounced"
    WHISPERED = "whispered"


class AlignmentSystem(str, enum.Enum):
    NON_NATIVE_BEST = "non_native_best"
    NATIVE_EN = "native_en"
    NATIVE_DE = "native_de"


@dataclass(frozen=True, order=True)
class QuestionKey:
    """Identifies a question in the grouping hierarchy.

    The four fields are ordered from coarse to fine; equality on a prefix
    of fields defines each grouping level (language, proficiency level,
    session, question).
    """

    language: Language
    level: Level
    session: Session
    question_id: str

    def group(self) -> tuple:
        """The (language, level, session) triple used to group classifiers."""
        return (self.language, self.level, self.session)

    def prefix(self, depth: int) -> tuple:
        """First ``depth`` fields (1=language .. 4=full key)."""
        return (self.language, self.level, self.session, self.question_id)[:depth]


@dataclass(frozen=True)
class ScoreVector:
    """The six expert indicator scores, each in {0,1,2}."""

    answer_relevance: int
    syntactical_correctness: int
    lexical_properties: int
    pronunciation: int
    fluency: int
    communicative_skills: int

    def __post_init__(self):
        for name in INDICATOR_NAMES:
            value = getattr(self, name)
            if value not in (0, 1, 2):
                raise DataError(f"indicator {name} must be 0, 1 or 2, got {value!r}")

    @property
    def total(self) -> int:
        return sum(self.as_tuple())

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, name) for name in INDICATOR_NAMES)

    @classmethod
    def from_sequence(cls, values: Sequence[int]) -> "ScoreVector":
        if len(values) != 6:
            raise DataError(f"expected 6 indicator scores, got {len(values)}")
        return cls(*values)


@dataclass(frozen=True)
class AnnotatedUtterance:
    """One spoken answer: raw marked-up transcription plus metadata."""

    utterance_id: str
    speaker_id: str
    question: QuestionKey
    raw_text: str
    scores: Optional[ScoreVector] = None


@dataclass(frozen=True)
class Token:
    surface: str
    source_language: SourceLanguage = SourceLanguage.TARGET
    flags: frozenset = frozenset()

    def has_flag(self, flag: TokenFlag) -> bool:
        return flag in self.flags


@dataclass
class CleanTranscript:
    """Marker-free token sequence produced by the transcription parser."""

    tokens: list = field(default_factory=list)
    noise_labels: Counter = field(default_factory=Counter)

    def surfaces(self, include_hesitations: bool = True) -> list:
        """Token surfaces in order, optionally dropping hesitation tokens."""
        if include_hesitations:
            return [t.surface for t in self.tokens]
        return [t.surface for t in self.tokens if not t.has_flag(TokenFlag.HESITATION)]


@dataclass(frozen=True)
class PhoneSegment:
    phone: str
    n_frames: int
    mean_log_likelihood: float

    def __post_init__(self):
        if self.n_frames < 1:
            raise DataError(f"segment must span at least one frame, got {self.n_frames}")

    @property
    def is_silence(self) -> bool:
        return self.phone in SILENCE_LABELS


@dataclass(frozen=True)
class PhoneAlignment:
    """Frame-level phone alignment emitted by one recognizer."""

    utterance_id: str
    system: AlignmentSystem
    segments: tuple

    @property
    def total_frames(self) -> int:
        return sum(s.n_frames for s in self.segments)

    @property
    def silence_frames(self) -> int:
        return sum(s.n_frames for s in self.segments if s.is_silence)

    def phone_sequence(self) -> list:
        """Silence-stripped phone labels in time order."""
        return [s.phone for s in self.segments if not s.is_silence]
