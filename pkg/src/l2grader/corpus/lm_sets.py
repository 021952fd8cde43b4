"""Assembly of the five nested LM training-text sets and best-answer selection."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from ..errors import MissingOutOfDomainText
from .parser import parse_transcription
from .types import AnnotatedUtterance, QuestionKey

log = logging.getLogger(__name__)

SET_NAMES = ("out_of_domain", "in_domain", "level", "session", "question")

BEST_TOTAL = 12
FALLBACK_QUARTILE = 0.25


def clean_for_lm(utterance: AnnotatedUtterance) -> list:
    """Marker-stripped token surfaces; hesitations are retained."""
    transcript = parse_transcription(utterance.raw_text, utterance.question.language)
    return transcript.surfaces(include_hesitations=True)


@dataclass
class LmTrainingSets:
    """The five text collections (a)-(e), each a list of token lists.

    ``utterance_ids`` records, per set, which train utterances
    contributed (empty for the out-of-domain set). ``fallbacks`` maps a
    set name to the ancestor set that replaced it because the original
    selection was empty.
    """

    texts: dict
    utterance_ids: dict
    fallbacks: dict = field(default_factory=dict)

    @property
    def out_of_domain(self):
        return self.texts["out_of_domain"]

    @property
    def in_domain(self):
        return self.texts["in_domain"]

    @property
    def level(self):
        return self.texts["level"]

    @property
    def session(self):
        return self.texts["session"]

    @property
    def question(self):
        return self.texts["question"]

    def in_canonical_order(self) -> list:
        return [self.texts[name] for name in SET_NAMES]


def assemble_sets(entries, key: QuestionKey, out_of_domain_sentences) -> LmTrainingSets:
    """Like :func:`build_lm_training_sets` but over pre-cleaned entries,
    each a (utterance_id, question, tokens) triple with nonempty tokens."""
    if not out_of_domain_sentences:
        raise MissingOutOfDomainText(
            f"no out-of-domain text configured for {key.language.value}"
        )
    in_language = [e for e in entries if e[1].language == key.language]
    selections = {
        "out_of_domain": None,
        "in_domain": in_language,
        "level": [e for e in in_language if e[1].level == key.level],
        "session": [
            e
            for e in in_language
            if e[1].level == key.level and e[1].session == key.session
        ],
        "question": [e for e in in_language if e[1] == key],
    }
    texts = {"out_of_domain": list(out_of_domain_sentences)}
    ids = {"out_of_domain": []}
    for name, selected in selections.items():
        if name == "out_of_domain":
            continue
        texts[name] = [tokens for _, _, tokens in selected]
        ids[name] = [utt_id for utt_id, _, _ in selected]
    fallbacks = {}
    for depth, name in enumerate(SET_NAMES[2:], start=2):
        if not texts[name]:
            ancestor = SET_NAMES[depth - 1]
            while not texts[ancestor] and ancestor != "in_domain":
                ancestor = SET_NAMES[SET_NAMES.index(ancestor) - 1]
            log.warning(
                "empty LM set %r for key %s; falling back to set %r", name, key, ancestor
            )
            texts[name] = list(texts[ancestor])
            ids[name] = list(ids[ancestor])
            fallbacks[name] = ancestor
    return LmTrainingSets(texts=texts, utterance_ids=ids, fallbacks=fallbacks)


def best_answer_pool(corpus) -> list:
    """The in-domain LM text pool: union over question keys of the
    per-question best training answers, ordered by utterance id."""
    keys = sorted({u.question for u in corpus if u.scores is not None})
    selected = {}
    for key in keys:
        for u in select_best_utterances(corpus, key, depth=4):
            selected[u.utterance_id] = u
    return [selected[utt_id] for utt_id in sorted(selected)]


def build_lm_training_sets(
    corpus, key: QuestionKey, out_of_domain_sentences
) -> LmTrainingSets:
    """The five text collections for ``key``: the out-of-domain set (a)
    plus the nested in-domain sets (b)-(e).

    The in-domain pool holds the top-scored ("best") training answers,
    so the resulting models measure how closely a sentence resembles
    answers the experts rated highest; sets (c)-(e) narrow that pool by
    proficiency level, session and question. Text is cleaned (markers
    stripped, hesitations retained); utterances reduced to an empty
    transcript are dropped. An empty inner set falls back to its nearest
    nonempty ancestor so the per-question model layout stays fixed; the
    substitution is recorded.
    """
    entries = []
    for u in best_answer_pool(corpus):
        tokens = clean_for_lm(u)
        if tokens:
            entries.append((u.utterance_id, u.question, tokens))
    return assemble_sets(entries, key, out_of_domain_sentences)


def select_best_utterances(corpus, key: QuestionKey, depth: int = 4) -> list:
    """Scored utterances for ``key`` (prefix-matched to ``depth`` fields)
    ranked best: all answers with total 12, or if none exist the top
    quartile by total score, ties included."""
    scored = [
        u
        for u in corpus
        if u.scores is not None and u.question.prefix(depth) == key.prefix(depth)
    ]
    if not scored:
        return []
    best = [u for u in scored if u.scores.total == BEST_TOTAL]
    if not best:
        totals = sorted((u.scores.total for u in scored), reverse=True)
        cutoff_rank = max(1, math.ceil(len(totals) * FALLBACK_QUARTILE))
        threshold = totals[cutoff_rank - 1]
        best = [u for u in scored if u.scores.total >= threshold]
    return best


def select_best_answers(corpus, key: QuestionKey) -> list:
    """Cleaned transcripts of the best training answers for ``key``;
    empty when the key has no scored answers at all."""
    texts = [clean_for_lm(u) for u in select_best_utterances(corpus, key)]
    return [tokens for tokens in texts if tokens]
