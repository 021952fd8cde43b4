"""The 116-dimensional answer representation.

Layout: 100 LM features (five text sets, outer, in the order
out-of-domain / all in-domain / level / session / question; four n-gram
orders, inner; five features per model), then 11 transcription features,
then 5 pronunciation features. FEATURE_NAMES documents every position.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..corpus.types import (
    CleanTranscript,
    Language,
    PhoneAlignment,
    SourceLanguage,
    TokenFlag,
)
from ..editdist import levenshtein
from ..errors import BlockCountMismatch, DataError, EmptyAlignment, UtteranceMismatch
from ..lm import SentenceScore
from .bow import BowSet
from .lexicons import Lexicons
from .spelling import spell_correct

log = logging.getLogger(__name__)

LM_SET_NAMES = ("ood", "all", "level", "session", "question")
LM_ORDERS = (1, 2, 3, 4)
LM_FEATURE_NAMES = (
    "avg_logprob",
    "oov_avg_logprob",
    "avg_logprob_diff",
    "n_seen_full_grams",
    "n_oov",
)
TRANSCRIPTION_FEATURE_NAMES = (
    "n_words",
    "n_content_words",
    "n_oov_reference",
    "oov_reference_ratio",
    "n_italian_words",
    "n_english_words",
    "n_german_words",
    "n_corrected_words",
    "bow_matches",
    "bow_per_word",
    "bow_per_content_word",
)
PRONUNCIATION_FEATURE_NAMES = (
    "n_frames",
    "n_silence_frames",
    "confidence",
    "phone_edit_distance",
    "confidence_gap",
)

FEATURE_NAMES = tuple(
    f"lm_{set_name}_{order}gram_{feat}"
    for set_name in LM_SET_NAMES
    for order in LM_ORDERS
    for feat in LM_FEATURE_NAMES
) + tuple(f"tr_{name}" for name in TRANSCRIPTION_FEATURE_NAMES) + tuple(
    f"pr_{name}" for name in PRONUNCIATION_FEATURE_NAMES
)

N_LM_FEATURES = len(LM_SET_NAMES) * len(LM_ORDERS) * len(LM_FEATURE_NAMES)
N_TRANSCRIPTION_FEATURES = len(TRANSCRIPTION_FEATURE_NAMES)
N_PRONUNCIATION_FEATURES = len(PRONUNCIATION_FEATURE_NAMES)
N_FEATURES = N_LM_FEATURES + N_TRANSCRIPTION_FEATURES + N_PRONUNCIATION_FEATURES

_LANGUAGE_NAME = {Language.ENGLISH: "english", Language.GERMAN: "german"}
_COUNT_BUCKET = {
    SourceLanguage.ITALIAN: "italian",
    SourceLanguage.ENGLISH: "english",
    SourceLanguage.GERMAN: "german",
}


@dataclass(frozen=True)
class FeatureVector:
    lm_block: np.ndarray
    transcription_block: np.ndarray
    pronunciation_block: np.ndarray

    def as_array(self) -> np.ndarray:
        return np.concatenate(
            [self.lm_block, self.transcription_block, self.pronunciation_block]
        )

    def __len__(self) -> int:
        return self.lm_block.size + self.transcription_block.size + self.pronunciation_block.size


def lm_feature_block(score: SentenceScore, minus_one_when_no_oov: bool = False):
    """The five per-model features (a)-(e).

    Average log probabilities are replaced by -1 when their word count is
    zero. Feature (c) normally treats a sentence without OOVs as having
    zero OOV log probability; ``minus_one_when_no_oov`` switches it to -1
    in that case as well.
    """
    a = score.log_p / score.n_w if score.n_w > 0 else -1.0
    b = score.log_p_oov / score.n_oov if score.n_oov > 0 else -1.0
    if score.n_w == 0 or (minus_one_when_no_oov and score.n_oov == 0):
        c = -1.0
    else:
        c = (score.log_p - score.log_p_oov) / score.n_w
    d = float(score.n_w - score.n_bo)
    e = float(score.n_oov)
    return (a, b, c, d, e)


def _resolve_language(token, lexicons: Lexicons, target: str) -> str:
    """Bucket for the per-language word counts (features 5-7)."""
    if token.source_language in _COUNT_BUCKET:
        return _COUNT_BUCKET[token.source_language]
    surface = token.surface
    if surface in lexicons.words[target]:
        return target
    if surface in lexicons.words["italian"]:
        return "italian"
    other = "german" if target == "english" else "english"
    if surface in lexicons.words[other]:
        return other
    return target


def transcription_features(
    transcript: CleanTranscript,
    lexicons: Lexicons,
    bow: BowSet,
    target_language: Language,
    count_hesitations: bool = True,
):
    """The 11 transcript-level features, in documented order."""
    target = _LANGUAGE_NAME[target_language]
    stop = lexicons.stopwords[target]
    tokens = [
        t
        for t in transcript.tokens
        if count_hesitations or not t.has_flag(TokenFlag.HESITATION)
    ]
    n_words = len(tokens)
    language_counts = {"italian": 0, "english": 0, "german": 0}
    n_content = 0
    n_oov_ref = 0
    n_corrected = 0
    bow_matches = 0
    for token in tokens:
        language_counts[_resolve_language(token, lexicons, target)] += 1
        if token.surface not in lexicons.reference:
            n_oov_ref += 1
        corrected, was_corrected = spell_correct(token.surface, lexicons, target)
        if was_corrected:
            n_corrected += 1
        if token.surface not in stop:
            n_content += 1
            if corrected in bow:
                bow_matches += 1
    return [
        float(n_words),
        float(n_content),
        float(n_oov_ref),
        n_oov_ref / n_words if n_words else 0.0,
        float(language_counts["italian"]),
        float(language_counts["english"]),
        float(language_counts["german"]),
        float(n_corrected),
        float(bow_matches),
        bow_matches / n_words if n_words else 0.0,
        bow_matches / n_content if n_content else 0.0,
    ]


def _confidence(alignment: PhoneAlignment) -> float:
    """Mean over distinct non-silence phones of the per-phone mean frame
    log likelihood; 0 when the alignment has no phone segments."""
    sums: dict = {}
    frames: dict = {}
    for segment in alignment.segments:
        if segment.is_silence:
            continue
        sums[segment.phone] = (
            sums.get(segment.phone, 0.0) + segment.mean_log_likelihood * segment.n_frames
        )
        frames[segment.phone] = frames.get(segment.phone, 0) + segment.n_frames
    if not sums:
        return 0.0
    return sum(sums[ph] / frames[ph] for ph in sums) / len(sums)


def pronunciation_features(best: PhoneAlignment, native: PhoneAlignment):
    """The 5 acoustic features from the non-native and native alignments.

    A fully silent utterance (silence-only segments) is legal: its
    confidence is 0. An alignment without any segments raises
    EmptyAlignment; the pipeline degrades that to an all-zero block.
    """
    if best.utterance_id != native.utterance_id:
        raise UtteranceMismatch(
            f"alignments for {best.utterance_id!r} vs {native.utterance_id!r}"
        )
    for alignment in (best, native):
        if not alignment.segments:
            raise EmptyAlignment(
                f"{alignment.system.value} alignment for {alignment.utterance_id!r} "
                "has no segments"
            )
    best_confidence = _confidence(best)
    return [
        float(best.total_frames),
        float(best.silence_frames),
        best_confidence,
        float(levenshtein(best.phone_sequence(), native.phone_sequence())),
        _confidence(native) - best_confidence,
    ]


def assemble_vector(lm_blocks, transcription, pronunciation=None) -> FeatureVector:
    """Concatenate the blocks into the fixed 116-entry layout.

    ``pronunciation=None`` (missing alignments) yields an all-zero
    pronunciation block and a warning.
    """
    if len(lm_blocks) != len(LM_SET_NAMES) * len(LM_ORDERS):
        raise BlockCountMismatch(f"expected 20 LM blocks, got {len(lm_blocks)}")
    for i, block in enumerate(lm_blocks):
        if len(block) != len(LM_FEATURE_NAMES):
            raise BlockCountMismatch(f"LM block {i} has {len(block)} features, not 5")
    if len(transcription) != N_TRANSCRIPTION_FEATURES:
        raise BlockCountMismatch(
            f"expected {N_TRANSCRIPTION_FEATURES} transcription features, "
            f"got {len(transcription)}"
        )
    if pronunciation is None:
        log.warning("missing phone alignments; pronunciation block zeroed")
        pronunciation = [0.0] * N_PRONUNCIATION_FEATURES
    if len(pronunciation) != N_PRONUNCIATION_FEATURES:
        raise BlockCountMismatch(
            f"expected {N_PRONUNCIATION_FEATURES} pronunciation features, "
            f"got {len(pronunciation)}"
        )
    vector = FeatureVector(
        lm_block=np.array([f for block in lm_blocks for f in block], dtype=np.float64),
        transcription_block=np.array(transcription, dtype=np.float64),
        pronunciation_block=np.array(pronunciation, dtype=np.float64),
    )
    if not np.isfinite(vector.as_array()).all():
        raise DataError("non-finite feature value")
    return vector
