"""Small lexicon-driven spelling corrector.

Correction order: an exact hit in the correction pair table wins; a word
already in the lexicon is left alone; otherwise a replacement happens
only when exactly one lexicon word sits at Levenshtein distance 1
(substitution, insertion or deletion - transpositions are two edits).
"""

from __future__ import annotations

from functools import lru_cache

from .lexicons import Lexicons


@lru_cache(maxsize=32)
def _alphabet(lexicon: frozenset) -> str:
    return "".join(sorted({ch for word in lexicon for ch in word}))


def edit_distance_1(word: str, alphabet: str):
    """All strings at Levenshtein distance exactly <= 1 (minus the word)."""
    splits = [(word[:i], word[i:]) for i in range(len(word) + 1)]
    deletes = {left + right[1:] for left, right in splits if right}
    replaces = {
        left + ch + right[1:] for left, right in splits if right for ch in alphabet
    }
    inserts = {left + ch + right for left, right in splits for ch in alphabet}
    return (deletes | replaces | inserts) - {word}


def spell_correct(token: str, lexicons: Lexicons, language: str):
    """(possibly corrected token, whether it was replaced)."""
    if token in lexicons.corrections:
        return lexicons.corrections[token], True
    lexicon = lexicons.words[language]
    if token in lexicon:
        return token, False
    candidates = edit_distance_1(token, _alphabet(lexicon)) & lexicon
    if len(candidates) == 1:
        return next(iter(candidates)), True
    return token, False
