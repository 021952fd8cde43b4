"""Synthetic corpus generator.

The real campaign data is private, so desk-scale experiments run on
generated answers whose indicator scores are a documented deterministic
function of planted properties (optionally blurred by seeded label
noise):

    answer relevance        -> question keywords used   (KEYWORDS_BY_SCORE)
    syntactical correctness -> correctable misspellings (MISSPELLINGS_BY_SCORE)
                               plus word-order scrambling
    lexical properties      -> out-of-lexicon junk words (OOV_BY_SCORE)
    pronunciation           -> phone log-likelihood offset (LL_OFFSET_BY_SCORE)
                               and native-vs-best phone substitutions
                               (PHONE_SUBS_BY_SCORE)
    fluency                 -> hesitations (HESITATIONS_BY_SCORE) and
                               silence frames (SILENCE_FRAMES_BY_SCORE)
    communicative skills    -> discourse connectives (CONNECTIVES_BY_SCORE)
                               and answer length in phrases
                               (PHRASES_BY_SCORE)

Like real formulaic learner speech, answers to one question reuse a
small bank of stock phrases, so coherent answers share their n-grams
with other answers to the same question and the LM features carry
signal that transfers across the speaker split; scrambling destroys
that phrase structure. A small fraction of answers is empty with
all-zero scores, mirroring silent or non-collaborative speakers.
Code-switched Italian spans appear more often in weaker answers. Every
file obeys the documented corpus, alignment and lexicon schemas, and
generation is byte-deterministic for a given seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..corpus.io import write_alignments, write_corpus
from ..corpus.types import (
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
from ..features.lexicons import default_stopwords

# channel strengths per indicator score (2 = passed ... 0 = not passed)
KEYWORDS_BY_SCORE = {2: 6, 1: 3, 0: 0}
MISSPELLINGS_BY_SCORE = {2: 0, 1: 2, 0: 4}
OOV_BY_SCORE = {2: 0, 1: 2, 0: 4}
LL_OFFSET_BY_SCORE = {2: 0.0, 1: -0.9, 0: -1.8}
PHONE_SUBS_BY_SCORE = {2: 0, 1: 3, 0: 6}
HESITATIONS_BY_SCORE = {2: 0, 1: 3, 0: 6}
SILENCE_FRAMES_BY_SCORE = {2: 20, 1: 90, 0: 200}
CONNECTIVES_BY_SCORE = {2: 4, 1: 2, 0: 0}
PHRASES_BY_SCORE = {2: 4, 1: 3, 0: 2}
ITALIAN_BY_MEAN_SCORE = {2: 0, 1: 1, 0: 2}

BASE_LOG_LIKELIHOOD = -0.8
LOG_LIKELIHOOD_JITTER = 0.05
FRAMES_PER_PHONE = (7, 8, 9)
PHONES_PER_WORD = 3

CONNECTIVES = {
    Language.ENGLISH: ("and", "so", "because", "then"),
    Language.GERMAN: ("und", "also", "weil", "dann"),
}
MISSPELLING_TABLE = {
    Language.ENGLISH: {
        "becouse": "because",
        "teh": "the",
        "adn": "and",
        "whit": "with",
        "thay": "they",
        "wos": "was",
    },
    Language.GERMAN: {
        "unt": "und",
        "nich": "nicht",
        "abba": "aber",
        "mitt": "mit",
        "aufe": "auf",
        "fone": "von",
    },
}
HESITATION_WORD = "ehm"
ITALIAN_POOL = (
    "casa", "scuola", "famiglia", "gatto", "cane", "libro", "amico",
    "bella", "grande", "piccolo", "subito", "domani", "risposto", "parlare",
)
PHONE_POOL = (
    "a", "e", "i", "o", "u", "p", "t", "k", "b", "d",
    "g", "m", "n", "s", "z", "l", "r", "f", "v", "w",
)

_CONSONANTS = "bdfglmnprstvz"
_VOWELS = "aeiou"


@dataclass
class SyntheticSpec:
    """Shape and strength of the generated corpus."""

    seed: int = 20180
    languages: tuple = (Language.ENGLISH, Language.GERMAN)
    levels: tuple = (Level.A1, Level.B1)
    sessions: tuple = (Session.S1, Session.S2)
    questions_per_session: int = 2
    utterances_per_question: int = 125
    speakers_per_language: int = 45
    keywords_per_question: int = 12
    phrases_per_question: int = 7
    ood_vocabulary_size: int = 80
    ood_lines: int = 300
    label_noise: float = 0.0
    empty_rate: float = 0.01

    def question_keys(self) -> list:
        keys = []
        for language in self.languages:
            for level in self.levels:
                for session in self.sessions:
                    for q in range(self.questions_per_session):
                        keys.append(
                            QuestionKey(
                                language=language,
                                level=level,
                                session=session,
                                question_id=f"q{level.value}{session.value}{chr(ord('a') + q)}",
                            )
                        )
        return keys

    @classmethod
    def from_file(cls, path) -> "SyntheticSpec":
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
        if "languages" in raw:
            raw["languages"] = tuple(Language(v) for v in raw["languages"])
        if "levels" in raw:
            raw["levels"] = tuple(Level(v) for v in raw["levels"])
        if "sessions" in raw:
            raw["sessions"] = tuple(Session(v) for v in raw["sessions"])
        return cls(**raw)


@dataclass
class SynthPaths:
    root: Path
    corpus: Path
    alignments: Path
    out_of_domain: dict
    lexicons: dict
    reference_lexicon: Path
    corrections: Path
    config: Path
    utterances: list = field(default_factory=list)


def _pseudo_word(rng, used: set, syllables: int = 3) -> str:
    while True:
        word = "".join(
            _CONSONANTS[rng.integers(len(_CONSONANTS))] + _VOWELS[rng.integers(len(_VOWELS))]
            for _ in range(syllables)
        )
        if word not in used:
            used.add(word)
            return word


def _word_pool(rng, used: set, size: int, syllables: int = 3) -> list:
    return [_pseudo_word(rng, used, syllables) for _ in range(size)]


def _noisy(rng, score: int, noise: float) -> int:
    if noise > 0.0 and rng.random() < noise:
        return int(rng.integers(0, 3))
    return score


def _word_phones(rng) -> list:
    return [PHONE_POOL[rng.integers(len(PHONE_POOL))] for _ in range(PHONES_PER_WORD)]


def _jitter(rng) -> float:
    return float(rng.uniform(-LOG_LIKELIHOOD_JITTER, LOG_LIKELIHOOD_JITTER))


def generate_synthetic(spec: SyntheticSpec, out_dir) -> SynthPaths:
    """Write corpus, alignments, out-of-domain text, lexicons and a
    ready-to-run pipeline config under ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(spec.seed)
    used_words: set = set()
    used_words.update(ITALIAN_POOL)
    used_words.add(HESITATION_WORD)
    stopwords = {}
    for name in ("english", "german", "italian"):
        stopwords[name] = default_stopwords(name)
        used_words.update(stopwords[name])
    for table in MISSPELLING_TABLE.values():
        used_words.update(table)

    keys = spec.question_keys()
    keywords = {key: _word_pool(rng, used_words, spec.keywords_per_question) for key in keys}
    phrase_banks = {}
    for key in keys:
        lang_name = "english" if key.language is Language.ENGLISH else "german"
        # connectives and hesitation surfaces are score channels of their
        # own, so stock phrases must never contain them
        reserved = set(CONNECTIVES[key.language]) | {"eh", "ehm", "mmh"}
        pool = sorted(stopwords[lang_name] - reserved)
        phrase_banks[key] = [
            tuple(pool[rng.integers(len(pool))] for _ in range(int(rng.integers(5, 9))))
            for _ in range(spec.phrases_per_question)
        ]
    ood_vocab = {
        language: _word_pool(rng, used_words, spec.ood_vocabulary_size)
        for language in spec.languages
    }

    utterances = []
    alignments = []
    counter = 0
    for key in keys:
        lang_name = "english" if key.language is Language.ENGLISH else "german"
        connectives = CONNECTIVES[key.language]
        misspellings = sorted(MISSPELLING_TABLE[key.language])
        for _ in range(spec.utterances_per_question):
            counter += 1
            utt_id = f"utt{counter:06d}"
            speaker = f"spk_{lang_name[:2]}_{rng.integers(spec.speakers_per_language):03d}"
            if rng.random() < spec.empty_rate:
                scores = ScoreVector(0, 0, 0, 0, 0, 0)
                utterances.append(
                    AnnotatedUtterance(utt_id, speaker, key, "", scores)
                )
                alignments.extend(_silent_alignments(utt_id, key.language))
                continue
            latent = [int(rng.integers(0, 3)) for _ in range(6)]
            relevance, syntax, lexical, pron, fluency, communicative = latent
            raw_text, n_words = _compose_text(
                rng,
                phrase_bank=phrase_banks[key],
                keyword_pool=keywords[key],
                connectives=connectives,
                misspellings=misspellings,
                latent=latent,
            )
            labels = [_noisy(rng, s, spec.label_noise) for s in latent]
            scores = ScoreVector(*labels)
            utterances.append(AnnotatedUtterance(utt_id, speaker, key, raw_text, scores))
            alignments.extend(
                _alignments_for(rng, utt_id, key.language, n_words, pron, fluency)
            )

    corpus_path = out_dir / "corpus.jsonl"
    write_corpus(corpus_path, utterances)
    alignments_path = out_dir / "alignments.jsonl"
    write_alignments(alignments_path, alignments)

    ood_paths = {}
    for language in spec.languages:
        lang_name = "english" if language is Language.ENGLISH else "german"
        path = out_dir / f"ood_{lang_name}.txt"
        lines = []
        pool = sorted(stopwords[lang_name]) + ood_vocab[language]
        for _ in range(spec.ood_lines):
            length = int(rng.integers(8, 15))
            lines.append(" ".join(pool[rng.integers(len(pool))] for _ in range(length)))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        ood_paths[language.value] = path

    lexicon_paths = {}
    reference_words: set = set()
    for name in ("english", "german", "italian"):
        words = set(stopwords[name])
        if name == "italian":
            words.update(ITALIAN_POOL)
        else:
            language = Language.ENGLISH if name == "english" else Language.GERMAN
            for key in keys:
                if key.language is language:
                    words.update(keywords[key])
            words.update(MISSPELLING_TABLE[language].values())
        path = out_dir / f"lexicon_{name}.txt"
        path.write_text("\n".join(sorted(words)) + "\n", encoding="utf-8")
        lexicon_paths[name] = path
        reference_words.update(words)

    reference_path = out_dir / "reference_lexicon.txt"
    reference_path.write_text("\n".join(sorted(reference_words)) + "\n", encoding="utf-8")

    corrections_path = out_dir / "corrections.tsv"
    pairs = []
    for table in MISSPELLING_TABLE.values():
        pairs.extend(sorted(table.items()))
    corrections_path.write_text(
        "".join(f"{wrong}\t{right}\n" for wrong, right in pairs), encoding="utf-8"
    )

    config_path = out_dir / "config.json"
    config_payload = {
        "utterances": corpus_path.name,
        "alignments": alignments_path.name,
        "out_of_domain": {k: Path(v).name for k, v in ood_paths.items()},
        "lexicons": {k: Path(v).name for k, v in lexicon_paths.items()},
        "reference_lexicon": reference_path.name,
        "corrections": corrections_path.name,
        "seed": spec.seed,
        "nn": {"seed": spec.seed},
        "output_dir": "run",
    }
    with open(config_path, "w", encoding="utf-8") as handle:
        json.dump(config_payload, handle, indent=2, sort_keys=True)
        handle.write("\n")

    return SynthPaths(
        root=out_dir,
        corpus=corpus_path,
        alignments=alignments_path,
        out_of_domain=ood_paths,
        lexicons=lexicon_paths,
        reference_lexicon=reference_path,
        corrections=corrections_path,
        config=config_path,
        utterances=utterances,
    )


def _compose_text(rng, phrase_bank, keyword_pool, connectives, misspellings, latent):
    """Assemble the marked-up answer text; returns (raw_text, token count).

    The answer is a sequence of stock phrases from the question's bank
    with the single-word channel items inserted at phrase boundaries;
    scrambling for low syntax scores happens at the word level and
    destroys the shared phrase n-grams.
    """
    relevance, syntax, lexical, _pron, fluency, communicative = latent
    segments = [
        list(phrase_bank[rng.integers(len(phrase_bank))])
        for _ in range(PHRASES_BY_SCORE[communicative])
    ]
    extras = [str(keyword_pool[i]) for i in rng.choice(
        len(keyword_pool), size=KEYWORDS_BY_SCORE[relevance], replace=False
    )]
    extras += [connectives[rng.integers(len(connectives))] for _ in range(CONNECTIVES_BY_SCORE[communicative])]
    extras += [misspellings[rng.integers(len(misspellings))] for _ in range(MISSPELLINGS_BY_SCORE[syntax])]
    extras += [_junk_word(rng) for _ in range(OOV_BY_SCORE[lexical])]
    extras += [HESITATION_WORD] * HESITATIONS_BY_SCORE[fluency]
    for extra in extras:
        segments.insert(int(rng.integers(len(segments) + 1)), [extra])
    words = [w for segment in segments for w in segment]
    if syntax == 0:
        rng.shuffle(words)
    elif syntax == 1:
        rng.shuffle(segments)
        words = [w for segment in segments for w in segment]
        for _ in range(2):
            i, j = rng.integers(len(words)), rng.integers(len(words))
            words[i], words[j] = words[j], words[i]
    n_italian = ITALIAN_BY_MEAN_SCORE[min(2, round(sum(latent) / 6.0))]
    chunks = list(words)
    if n_italian:
        span = " ".join(
            ITALIAN_POOL[rng.integers(len(ITALIAN_POOL))] for _ in range(n_italian)
        )
        chunks.insert(int(rng.integers(len(chunks) + 1)), f"@it( {span} )")
    if rng.random() < 0.05:
        chunks.insert(int(rng.integers(len(chunks) + 1)), "@voices")
    n_words = len(words) + n_italian
    return " ".join(chunks), n_words


def _junk_word(rng) -> str:
    return "x" + "".join(
        "bcdfghjklmnpqrstvwxz"[rng.integers(20)] for _ in range(7)
    )


def _native_system(language: Language) -> AlignmentSystem:
    return (
        AlignmentSystem.NATIVE_EN
        if language is Language.ENGLISH
        else AlignmentSystem.NATIVE_DE
    )


def _silence_segments(rng, total_frames: int) -> list:
    lead = int(rng.integers(1, total_frames))
    return (
        [PhoneSegment("sil", lead, BASE_LOG_LIKELIHOOD + _jitter(rng))],
        [PhoneSegment("sil", total_frames - lead, BASE_LOG_LIKELIHOOD + _jitter(rng))],
    )


def _silent_alignments(utt_id: str, language: Language) -> list:
    segments = (PhoneSegment("sil", SILENCE_FRAMES_BY_SCORE[0], BASE_LOG_LIKELIHOOD),)
    return [
        PhoneAlignment(utt_id, AlignmentSystem.NON_NATIVE_BEST, segments),
        PhoneAlignment(utt_id, _native_system(language), segments),
    ]


def _alignments_for(rng, utt_id: str, language: Language, n_words: int, pron: int, fluency: int):
    phones = []
    for _ in range(n_words):
        phones.extend(_word_phones(rng))
    lead, trail = _silence_segments(rng, SILENCE_FRAMES_BY_SCORE[fluency])
    best_segments = list(lead)
    offset = LL_OFFSET_BY_SCORE[pron]
    for phone in phones:
        best_segments.append(
            PhoneSegment(
                phone,
                int(FRAMES_PER_PHONE[rng.integers(len(FRAMES_PER_PHONE))]),
                BASE_LOG_LIKELIHOOD + offset + _jitter(rng),
            )
        )
    best_segments.extend(trail)

    native_phones = list(phones)
    n_subs = min(PHONE_SUBS_BY_SCORE[pron], len(native_phones))
    if n_subs:
        positions = rng.choice(len(native_phones), size=n_subs, replace=False)
        for pos in positions:
            current = native_phones[pos]
            native_phones[pos] = PHONE_POOL[
                (PHONE_POOL.index(current) + 1) % len(PHONE_POOL)
            ]
    native_segments = list(lead)
    for phone in native_phones:
        native_segments.append(
            PhoneSegment(
                phone,
                int(FRAMES_PER_PHONE[rng.integers(len(FRAMES_PER_PHONE))]),
                BASE_LOG_LIKELIHOOD + _jitter(rng),
            )
        )
    native_segments.extend(trail)
    return [
        PhoneAlignment(utt_id, AlignmentSystem.NON_NATIVE_BEST, tuple(best_segments)),
        PhoneAlignment(utt_id, _native_system(language), tuple(native_segments)),
    ]
