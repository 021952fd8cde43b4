"""Word lists, stop-word lists and the correction pair table."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from ..errors import ConfigError, DataError

LANGUAGE_NAMES = ("english", "german", "italian")

_STOPWORD_RESOURCES = {
    "english": "stopwords_en.txt",
    "german": "stopwords_de.txt",
    "italian": "stopwords_it.txt",
}


@dataclass(frozen=True)
class Lexicons:
    """All word lists used by the transcription features.

    ``words`` and ``stopwords`` map language name ("english", "german",
    "italian") to a frozenset of lowercase words. ``reference`` is the
    lexicon against which the OOV percentage feature is computed, distinct
    from any LM vocabulary.
    """

    words: dict
    stopwords: dict
    corrections: dict
    reference: frozenset

    def __post_init__(self):
        for name in LANGUAGE_NAMES:
            if name not in self.words or name not in self.stopwords:
                raise ConfigError(f"missing word or stop list for {name!r}")
        for wrong, right in self.corrections.items():
            if not wrong or not right:
                raise DataError(f"empty string in correction pair {wrong!r} -> {right!r}")


def read_word_list(path) -> frozenset:
    """One word per line; lowercased, blanks skipped."""
    with open(path, "r", encoding="utf-8") as handle:
        return frozenset(line.strip().lower() for line in handle if line.strip())


def read_correction_table(path) -> dict:
    """Tab-separated (wrong, right) pairs, lowercased."""
    table = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
                raise DataError(f"{path}:{lineno}: expected two tab-separated words")
            table[parts[0].strip().lower()] = parts[1].strip().lower()
    return table


def default_stopwords(language: str) -> frozenset:
    """Stop list shipped with the package."""
    if language not in _STOPWORD_RESOURCES:
        raise ConfigError(f"no default stop list for {language!r}")
    text = (
        resources.files("l2grader.data")
        .joinpath(_STOPWORD_RESOURCES[language])
        .read_text(encoding="utf-8")
    )
    return frozenset(line.strip().lower() for line in text.splitlines() if line.strip())


def load_lexicons(
    word_paths: dict,
    reference_path,
    corrections_path=None,
    stopword_paths: dict | None = None,
) -> Lexicons:
    """Build a Lexicons bundle from word-per-line files.

    ``word_paths`` maps language names to lexicon files. Stop lists
    default to the ones shipped with the package.
    """
    words = {name: read_word_list(path) for name, path in word_paths.items()}
    for name in LANGUAGE_NAMES:
        words.setdefault(name, frozenset())
    stopwords = {}
    for name in LANGUAGE_NAMES:
        if stopword_paths and name in stopword_paths:
            stopwords[name] = read_word_list(stopword_paths[name])
        else:
            stopwords[name] = default_stopwords(name)
    corrections = read_correction_table(corrections_path) if corrections_path else {}
    return Lexicons(
        words=words,
        stopwords=stopwords,
        corrections=corrections,
        reference=read_word_list(reference_path),
    )
