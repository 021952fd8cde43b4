import pytest

from l2grader.corpus.types import (
    AnnotatedUtterance,
    Language,
    Level,
    QuestionKey,
    ScoreVector,
    Session,
)
from l2grader.features.lexicons import Lexicons, default_stopwords


def make_key(
    language=Language.ENGLISH, level=Level.A1, session=Session.S1, question_id="q1"
) -> QuestionKey:
    return QuestionKey(language=language, level=level, session=session, question_id=question_id)


def make_utterance(
    utt_id,
    text,
    speaker="spk1",
    scores=None,
    key=None,
    **key_fields,
) -> AnnotatedUtterance:
    if key is None:
        key = make_key(**key_fields)
    if isinstance(scores, (list, tuple)):
        scores = ScoreVector(*scores)
    return AnnotatedUtterance(
        utterance_id=utt_id, speaker_id=speaker, question=key, raw_text=text, scores=scores
    )


@pytest.fixture
def tiny_lexicons() -> Lexicons:
    english = frozenset(
        {"house", "mouse", "pause", "cat", "dog", "year", "years", "old", "school",
         "friend", "because", "ten", "i", "am", "is", "the", "and"}
    )
    german = frozenset({"haus", "maus", "schule", "freund", "jahre", "alt", "und", "ich"})
    italian = frozenset({"io", "ho", "già", "risposto", "casa", "scuola", "ciao"})
    return Lexicons(
        words={"english": english, "german": german, "italian": italian},
        stopwords={name: default_stopwords(name) for name in ("english", "german", "italian")},
        corrections={"becouse": "because", "ai em": "i am", "seher": "sehr"},
        reference=english | german,
    )
