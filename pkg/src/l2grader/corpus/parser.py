"""Parser for the marked-up transcription annotation format.

The canonical marker grammar (see docs/transcription_grammar.md):

    @voices              background voices, recorded as a noise label
    @noise               any other extraneous noise, recorded as a noise label
    @hes                 an unlexicalized hesitation (token surface "eh")
    @it( ... )           code-switched span in Italian
    @en( ... )           code-switched span in English
    @de( ... )           code-switched span in German
    ( ... )              whispered span
    #word                badly pronounced word
    word                 plain token of the target language

Spans do not nest. A language tag must be glued to its opening
parenthesis. Tokens are lowercased and sentence punctuation .,!?;: is
stripped from their edges, so no emitted surface ever contains a marker
character.
"""

from __future__ import annotations

import re

from ..errors import UnbalancedMarker, UnknownLanguageTag
from .types import CleanTranscript, Language, SourceLanguage, Token, TokenFlag

HESITATION_SURFACES = frozenset({"eh", "ehm", "mmh"})
HESITATION_CANONICAL = "eh"

_LANG_TAGS = {
    "it": SourceLanguage.ITALIAN,
    "en": SourceLanguage.ENGLISH,
    "de": SourceLanguage.GERMAN,
}
_NOISE_LABELS = {"voices": "voices", "noise": "other"}
_EDGE_PUNCT = ".,!?;:"

_SCANNER = re.compile(
    r"@(?P<span_tag>[^\s()@#]+)\(" r"|@(?P<bare_tag>[^\s()@#]+)" r"|(?P<open>\()"
    r"|(?P<close>\))" r"|(?P<word>[^\s()@]+)"
)


def tokenize_plain(text: str) -> list:
    """Lowercase, whitespace-split and strip edge punctuation (no markers)."""
    out = []
    for chunk in text.lower().split():
        surface = chunk.strip(_EDGE_PUNCT)
        if surface:
            out.append(surface)
    return out


def _make_token(chunk: str, span) -> Token | None:
    flags = set()
    if chunk.startswith("#"):
        flags.add(TokenFlag.BADLY_PRONOUNCED)
    surface = chunk.lstrip("#").replace("#", "").lower().strip(_EDGE_PUNCT)
    if not surface:
        return None
    language = SourceLanguage.TARGET
    if span is not None:
        kind, value = span
        if kind == "lang":
            language = value
        else:
            flags.add(TokenFlag.WHISPERED)
    if surface in HESITATION_SURFACES:
        flags.add(TokenFlag.HESITATION)
    return Token(surface=surface, source_language=language, flags=frozenset(flags))


def parse_transcription(raw_text: str, target_language: Language) -> CleanTranscript:
    """Turn a marked-up transcription into flagged, language-tagged tokens.

    ``target_language`` is recorded only implicitly: untagged tokens get
    ``SourceLanguage.TARGET``. Raises UnbalancedMarker or
    UnknownLanguageTag on input outside the grammar.
    """
    del target_language  # untagged tokens are relative to the target
    transcript = CleanTranscript()
    span = None  # None | ("lang", SourceLanguage) | ("whisper", None)
    span_pos = 0
    for match in _SCANNER.finditer(raw_text):
        pos = match.start()
        if match.lastgroup == "span_tag":
            tag = match.group("span_tag")
            if span is not None:
                raise UnbalancedMarker("nested span marker", pos)
            if tag.lower() not in _LANG_TAGS:
                raise UnknownLanguageTag(tag)
            span = ("lang", _LANG_TAGS[tag.lower()])
            span_pos = pos
        elif match.lastgroup == "bare_tag":
            tag = match.group("bare_tag")
            low = tag.lower()
            if low in _NOISE_LABELS:
                transcript.noise_labels[_NOISE_LABELS[low]] += 1
            elif low == "hes":
                token = Token(
                    surface=HESITATION_CANONICAL,
                    source_language=(
                        span[1] if span is not None and span[0] == "lang"
                        else SourceLanguage.TARGET
                    ),
                    flags=frozenset(
                        {TokenFlag.HESITATION, TokenFlag.WHISPERED}
                        if span is not None and span[0] == "whisper"
                        else {TokenFlag.HESITATION}
                    ),
                )
                transcript.tokens.append(token)
            elif low in _LANG_TAGS:
                raise UnbalancedMarker(f"language tag @{tag} without a span", pos)
            else:
                raise UnknownLanguageTag(tag)
        elif match.lastgroup == "open":
            if span is not None:
                raise UnbalancedMarker("nested span marker", pos)
            span = ("whisper", None)
            span_pos = pos
        elif match.lastgroup == "close":
            if span is None:
                raise UnbalancedMarker("closing parenthesis without a span", pos)
            span = None
        else:
            token = _make_token(match.group("word"), span)
            if token is not None:
                transcript.tokens.append(token)
    if span is not None:
        raise UnbalancedMarker("span never closed", span_pos)
    return transcript
