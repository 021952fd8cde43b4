"""Back-off n-gram language models with interpolated Witten-Bell smoothing.

A model of order n is trained on token lists. Sentences are padded with
n-1 start symbols, so the first real token always has a full-order
context; no end-of-sentence token is scored. Witten-Bell interpolation
is parameter-free:

    p(w | h) = lam(h) * c(h,w)/c(h) + (1 - lam(h)) * p(w | h'),
    lam(h)   = c(h) / (c(h) + t(h)),

where c(h) is the number of continuations of context h, t(h) the number
of distinct continuation types, and h' drops the oldest context word. At
the unigram level the whole unseen mass goes to the reserved unknown
token: p(w) = c(w)/(N+T) for seen words and p(unk) = T/(N+T), which keeps
every conditional distribution over vocabulary + unknown summing to one.

All log quantities use natural log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ContextTooLong, DataError, EmptyTrainingText

SOS = "<s>"
UNK = "<unk>"

FORMAT_NAME = "l2grader-ngram"
FORMAT_VERSION = 1
SMOOTHING_NAME = "witten-bell"


@dataclass(frozen=True)
class SentenceScore:
    """LM accounting for one sentence.

    log_p sums per-token log probabilities with OOV tokens scored as the
    unknown token; log_p_oov sums exactly the OOV positions; n_bo counts
    tokens whose full-order n-gram was never seen in training.
    """

    log_p: float
    log_p_oov: float
    n_w: int
    n_oov: int
    n_bo: int


class NgramModel:
    """Immutable once trained; see :func:`train`."""

    def __init__(self, order: int, counts: dict, n_sentences: int):
        if not 1 <= order <= 4:
            raise ValueError(f"order must be in [1,4], got {order}")
        self.order = order
        self.counts = counts
        self.n_sentences = n_sentences
        self.vocabulary = frozenset(g[0] for g in counts if len(g) == 1 and g[0] != SOS)
        if not self.vocabulary:
            raise EmptyTrainingText("training text contains no tokens")
        # continuation statistics per context, from token-final n-grams only
        cont_total: dict = {}
        cont_types: dict = {}
        for gram, count in counts.items():
            if gram[-1] == SOS:
                continue
            context = gram[:-1]
            cont_total[context] = cont_total.get(context, 0) + count
            cont_types[context] = cont_types.get(context, 0) + 1
        self._cont_total = cont_total
        self._cont_types = cont_types
        self._n_tokens = cont_total[()]
        self._n_types = cont_types[()]

    # -- queries ---------------------------------------------------------

    def prob(self, word: str, context=()) -> float:
        """Smoothed p(word | context); never zero.

        Unknown words (in the query or the context) are mapped to the
        reserved unknown token. The context may be shorter than order-1.
        """
        if len(context) > self.order - 1:
            raise ContextTooLong(
                f"context of length {len(context)} for an order-{self.order} model"
            )
        return self._prob(self._map(word), self._map_context(context))

    def score_sentence(self, tokens) -> SentenceScore:
        """Score a token sequence, exposing the OOV and back-off counts."""
        if not tokens:
            return SentenceScore(0.0, 0.0, 0, 0, 0)
        mapped = [self._map(w) for w in tokens]
        history = [SOS] * (self.order - 1)
        log_p = 0.0
        log_p_oov = 0.0
        n_oov = 0
        n_bo = 0
        for word in mapped:
            context = tuple(history[len(history) - self.order + 1 :]) if self.order > 1 else ()
            lp = math.log(self._prob(word, context))
            log_p += lp
            if word == UNK:
                n_oov += 1
                log_p_oov += lp
            if self.counts.get(context + (word,), 0) == 0:
                n_bo += 1
            history.append(word)
        return SentenceScore(log_p, log_p_oov, len(tokens), n_oov, n_bo)

    def _map(self, word: str) -> str:
        return word if word in self.vocabulary else UNK

    def _map_context(self, context) -> tuple:
        return tuple(w if (w in self.vocabulary or w == SOS) else UNK for w in context)

    def _prob(self, word: str, context: tuple) -> float:
        if not context:
            if word == UNK:
                return self._n_types / (self._n_tokens + self._n_types)
            return self.counts[(word,)] / (self._n_tokens + self._n_types)
        lower = self._prob(word, context[1:])
        total = self._cont_total.get(context, 0)
        if total == 0:
            return lower
        lam = total / (total + self._cont_types[context])
        ml = self.counts.get(context + (word,), 0) / total
        return lam * ml + (1.0 - lam) * lower

    # -- serialization ---------------------------------------------------

    def save(self, path) -> None:
        """Versioned text format, byte-stable for identical training inputs."""
        records = sorted(g for g in self.counts if g[-1] != SOS)
        records.sort(key=len)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(f"{FORMAT_NAME} {FORMAT_VERSION}\n")
            handle.write(f"order {self.order}\n")
            handle.write(f"vocab_size {len(self.vocabulary)}\n")
            handle.write(f"sentences {self.n_sentences}\n")
            handle.write(f"smoothing {SMOOTHING_NAME}\n")
            handle.write("log_base e\n")
            handle.write(f"ngrams {len(records)}\n")
            for gram in records:
                prob = self._prob(gram[-1], gram[:-1])
                handle.write(f"{' '.join(gram)}\t{self.counts[gram]}\t{prob!r}\n")

    @classmethod
    def load(cls, path) -> "NgramModel":
        path = Path(path)
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.read().splitlines()
        try:
            name, version = lines[0].split()
            if name != FORMAT_NAME or int(version) != FORMAT_VERSION:
                raise DataError(f"{path}: unsupported model format {lines[0]!r}")
            header = dict(line.split(" ", 1) for line in lines[1:7])
            order = int(header["order"])
            n_sentences = int(header["sentences"])
            n_records = int(header["ngrams"])
            counts = {}
            for line in lines[7 : 7 + n_records]:
                words, count, _prob = line.split("\t")
                counts[tuple(words.split(" "))] = int(count)
        except (IndexError, KeyError, ValueError) as exc:
            raise DataError(f"{path}: corrupt model file: {exc}") from exc
        _add_padding_counts(counts, order, n_sentences)
        return cls(order=order, counts=counts, n_sentences=n_sentences)


def train(texts, order: int) -> NgramModel:
    """Count all 1..order grams over start-padded sentences.

    ``texts`` is an ordered collection of token lists; empty sentences are
    ignored. Raises EmptyTrainingText when no tokens remain.
    """
    if not 1 <= order <= 4:
        raise ValueError(f"order must be in [1,4], got {order}")
    counts: dict = {}
    n_sentences = 0
    for sentence in texts:
        if not sentence:
            continue
        n_sentences += 1
        padded = [SOS] * (order - 1) + list(sentence)
        for size in range(1, order + 1):
            for start in range(order - size, len(padded) - size + 1):
                gram = tuple(padded[start : start + size])
                if gram[-1] == SOS:
                    continue
                counts[gram] = counts.get(gram, 0) + 1
    if not counts:
        raise EmptyTrainingText("no tokens in training text")
    _add_padding_counts(counts, order, n_sentences)
    return NgramModel(order=order, counts=counts, n_sentences=n_sentences)


def _add_padding_counts(counts: dict, order: int, n_sentences: int) -> None:
    # pure-padding grams keep every positive n-gram's prefix positive
    for size in range(1, order):
        counts[(SOS,) * size] = (order - size) * n_sentences
