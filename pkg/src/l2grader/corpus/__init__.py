from .io import (
    read_alignments,
    read_corpus,
    read_text_lines,
    write_alignments,
    write_corpus,
)
from .lm_sets import (
    LmTrainingSets,
    assemble_sets,
    build_lm_training_sets,
    clean_for_lm,
    select_best_answers,
    select_best_utterances,
)
from .parser import HESITATION_SURFACES, parse_transcription, tokenize_plain
from .splits import split_by_speaker
from .types import (
    INDICATOR_NAMES,
    SILENCE_LABELS,
    AlignmentSystem,
    AnnotatedUtterance,
    CleanTranscript,
    Language,
    Level,
    PhoneAlignment,
    PhoneSegment,
    QuestionKey,
    ScoreVector,
    Session,
    SourceLanguage,
    Token,
    TokenFlag,
)

__all__ = [
    "INDICATOR_NAMES",
    "SILENCE_LABELS",
    "HESITATION_SURFACES",
    "AlignmentSystem",
    "AnnotatedUtterance",
    "CleanTranscript",
    "Language",
    "Level",
    "LmTrainingSets",
    "PhoneAlignment",
    "PhoneSegment",
    "QuestionKey",
    "ScoreVector",
    "Session",
    "SourceLanguage",
    "Token",
    "TokenFlag",
    "assemble_sets",
    "build_lm_training_sets",
    "clean_for_lm",
    "parse_transcription",
    "read_alignments",
    "read_corpus",
    "read_text_lines",
    "select_best_answers",
    "select_best_utterances",
    "split_by_speaker",
    "tokenize_plain",
    "write_alignments",
    "write_corpus",
]
