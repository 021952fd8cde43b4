import pytest
from hypothesis import given, strategies as st

from l2grader.corpus.parser import parse_transcription, tokenize_plain
from l2grader.corpus.types import Language, SourceLanguage, TokenFlag
from l2grader.errors import UnbalancedMarker, UnknownLanguageTag

EN = Language.ENGLISH
DE = Language.GERMAN


def surfaces(transcript):
    return [t.surface for t in transcript.tokens]


def test_code_switch_example_from_guidelines():
    out = parse_transcription("I am 10 years old @it(io ho già risposto)", EN)
    assert len(out.tokens) == 9
    assert surfaces(out) == ["i", "am", "10", "years", "old", "io", "ho", "già", "risposto"]
    assert [t.source_language for t in out.tokens[-4:]] == [SourceLanguage.ITALIAN] * 4
    assert all(t.source_language is SourceLanguage.TARGET for t in out.tokens[:5])


def test_empty_input():
    out = parse_transcription("", DE)
    assert out.tokens == []
    assert not out.noise_labels


def test_badly_pronounced_and_voices():
    out = parse_transcription("#house @voices hello", EN)
    assert surfaces(out) == ["house", "hello"]
    assert out.tokens[0].has_flag(TokenFlag.BADLY_PRONOUNCED)
    assert not out.tokens[1].flags
    assert out.noise_labels == {"voices": 1}


def test_whispered_span():
    out = parse_transcription("hello ( one two ) bye", EN)
    assert surfaces(out) == ["hello", "one", "two", "bye"]
    assert out.tokens[1].has_flag(TokenFlag.WHISPERED)
    assert out.tokens[2].has_flag(TokenFlag.WHISPERED)
    assert not out.tokens[3].flags


def test_whispered_span_without_inner_spaces():
    out = parse_transcription("(whisper)", EN)
    assert surfaces(out) == ["whisper"]
    assert out.tokens[0].has_flag(TokenFlag.WHISPERED)


def test_hesitations_by_surface_and_marker():
    out = parse_transcription("eh well @hes ehm mmh", EN)
    assert surfaces(out) == ["eh", "well", "eh", "ehm", "mmh"]
    flags = [t.has_flag(TokenFlag.HESITATION) for t in out.tokens]
    assert flags == [True, False, True, True, True]


def test_noise_label_other():
    out = parse_transcription("@noise hello @noise @voices", EN)
    assert surfaces(out) == ["hello"]
    assert out.noise_labels == {"other": 2, "voices": 1}


def test_lowercasing_and_punctuation_stripping():
    out = parse_transcription("Hello, World! NICE; day:", EN)
    assert surfaces(out) == ["hello", "world", "nice", "day"]


def test_language_tags_en_de():
    out = parse_transcription("ciao @en(hello there) @de(guten tag)", DE)
    langs = [t.source_language for t in out.tokens]
    assert langs == [
        SourceLanguage.TARGET,
        SourceLanguage.ENGLISH,
        SourceLanguage.ENGLISH,
        SourceLanguage.GERMAN,
        SourceLanguage.GERMAN,
    ]


def test_badly_pronounced_inside_span():
    out = parse_transcription("@it(#male parole)", EN)
    assert surfaces(out) == ["male", "parole"]
    assert out.tokens[0].has_flag(TokenFlag.BADLY_PRONOUNCED)
    assert out.tokens[0].source_language is SourceLanguage.ITALIAN


def test_unknown_language_tag_echoed():
    with pytest.raises(UnknownLanguageTag) as err:
        parse_transcription("hello @fr(bonjour)", EN)
    assert err.value.tag == "fr"
    with pytest.raises(UnknownLanguageTag) as err:
        parse_transcription("hello @laugh", EN)
    assert err.value.tag == "laugh"


def test_unbalanced_markers_report_position():
    with pytest.raises(UnbalancedMarker) as err:
        parse_transcription("hello @it(ciao", EN)
    assert err.value.position == 6
    with pytest.raises(UnbalancedMarker) as err:
        parse_transcription("hello ) there", EN)
    assert err.value.position == 6
    with pytest.raises(UnbalancedMarker):
        parse_transcription("( nested ( again ) )", EN)
    with pytest.raises(UnbalancedMarker):
        parse_transcription("bare tag @it alone", EN)


MARKER_CHARS = set("@#()")

words = st.text(
    alphabet=st.characters(whitelist_categories=("Ll",), whitelist_characters="'-"),
    min_size=1,
    max_size=8,
).filter(lambda w: not MARKER_CHARS & set(w) and w.strip("'-"))


@st.composite
def marked_up_texts(draw):
    parts = []
    for _ in range(draw(st.integers(0, 8))):
        kind = draw(st.sampled_from(["word", "bad", "voices", "hes", "lang", "whisper"]))
        if kind == "word":
            parts.append(draw(words))
        elif kind == "bad":
            parts.append("#" + draw(words))
        elif kind == "voices":
            parts.append("@voices")
        elif kind == "hes":
            parts.append("@hes")
        elif kind == "lang":
            tag = draw(st.sampled_from(["it", "en", "de"]))
            inner = " ".join(draw(st.lists(words, min_size=0, max_size=3)))
            parts.append(f"@{tag}( {inner} )")
        else:
            inner = " ".join(draw(st.lists(words, min_size=1, max_size=3)))
            parts.append(f"( {inner} )")
    return " ".join(parts)


@given(marked_up_texts())
def test_round_trip_never_contains_marker_characters(text):
    out = parse_transcription(text, EN)
    joined = " ".join(t.surface for t in out.tokens)
    assert not MARKER_CHARS & set(joined)


@given(marked_up_texts())
def test_reparsing_serialized_surfaces_is_stable(text):
    out = parse_transcription(text, EN)
    joined = " ".join(t.surface for t in out.tokens)
    again = parse_transcription(joined, EN)
    assert [t.surface for t in again.tokens] == [t.surface for t in out.tokens]


def test_tokenize_plain():
    assert tokenize_plain("The cat, sat. DOWN!") == ["the", "cat", "sat", "down"]
    assert tokenize_plain("") == []
