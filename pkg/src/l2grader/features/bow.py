"""Bag-of-words set built from the best-scored training answers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .lexicons import Lexicons
from .spelling import spell_correct

DEFAULT_BOW_K = 50


@dataclass(frozen=True)
class BowSet:
    """Top-K content words of the best answers, with their frequencies.

    Matching happens on corrected lowercase surfaces; stop words never
    enter the set.
    """

    words: dict
    k: int

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)


def build_bow_set(
    best_texts, lexicons: Lexicons, language: str, k: int = DEFAULT_BOW_K
) -> BowSet:
    """Count corrected content words over the best-answer transcripts and
    keep the ``k`` most frequent (ties broken alphabetically)."""
    stop = lexicons.stopwords[language]
    counts: Counter = Counter()
    for tokens in best_texts:
        for token in tokens:
            corrected, _ = spell_correct(token, lexicons, language)
            if corrected not in stop:
                counts[corrected] += 1
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return BowSet(words=dict(ranked[:k]), k=k)
