"""Rule-based segmentation of raw text into the constituent hierarchy.

Segmentation is total: any input yields a valid tree, in the worst case
one paragraph/sentence/phrase covering everything. Delimiter material
lives in the gaps between constituent spans, so concatenating phrase
spans and gaps always reproduces the input exactly.
"""

from __future__ import annotations

import functools
import re
import unicodedata
from dataclasses import dataclass, replace
from typing import Callable, Iterable

from .errors import ConfigError, LevelError
from .model import Constituent, ConstituentTree, Document, Level, Token, TokenClass

DEFAULT_PARAGRAPH_DELIMITER = r"\n[ \t\r]*\n(?:[ \t\r]*\n)*"
DEFAULT_SENTENCE_DELIMITER = r"[.!?:]\s+"
DEFAULT_PHRASE_DELIMITER = r"[,;:()]"
DEFAULT_NUMERAL_PATTERN = r"[0-9]+(?:[.,/\-][0-9]+)*"

# Words are letter runs with optional internal apostrophes or hyphens;
# not configurable, unlike the four delimiter patterns.
_WORD_RE = re.compile(r"[^\W\d_]+(?:['\u2019\-][^\W\d_]+)*")

_BACKREF_RE = re.compile(r"\\[1-9]|\(\?P=|\\g<")


def check_pattern(pattern: str, key: str = "pattern") -> str:
    """Validate a configurable pattern against the portable regex subset.

    Literals, classes, repetition and alternation are allowed;
    backreferences are rejected.
    """
    if _BACKREF_RE.search(pattern):
        raise ConfigError(f"{key}: backreferences are not part of the portable pattern subset")
    try:
        re.compile(pattern)
    except re.error as exc:
        raise ConfigError(f"{key}: invalid pattern: {exc}") from None
    return pattern


@functools.lru_cache(maxsize=64)
def _compiled(pattern: str) -> re.Pattern[str]:
    return re.compile(pattern)


@dataclass(frozen=True)
class SegmentationRules:
    """Delimiter patterns driving the paragraph/sentence/phrase split.

    ``abbreviations`` lists tokens (without the trailing period) that never
    end a sentence, e.g. ``"Art"`` to keep "Art. 12" together.
    """

    paragraph_delimiter: str = DEFAULT_PARAGRAPH_DELIMITER
    sentence_delimiter: str = DEFAULT_SENTENCE_DELIMITER
    phrase_delimiter: str = DEFAULT_PHRASE_DELIMITER
    numeral_pattern: str = DEFAULT_NUMERAL_PATTERN
    abbreviations: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        check_pattern(self.paragraph_delimiter, "paragraph_delimiter")
        check_pattern(self.sentence_delimiter, "sentence_delimiter")
        check_pattern(self.phrase_delimiter, "phrase_delimiter")
        check_pattern(self.numeral_pattern, "numeral_pattern")
        object.__setattr__(self, "abbreviations", frozenset(self.abbreviations))


DEFAULT_RULES = SegmentationRules()


@dataclass(frozen=True)
class Normalizer:
    """Named token-normalization hook applied to token surfaces.

    The mapping must be deterministic and the identity on the empty string;
    morphological normalizers plug in here without any change of method.
    """

    name: str
    mapping: Callable[[str], str]

    def __post_init__(self) -> None:
        if self.mapping("") != "":
            raise ConfigError(f"normalizer {self.name!r} is not identity on the empty string")

    def __call__(self, surface: str) -> str:
        return self.mapping(surface)


def _casefold(s: str) -> str:
    return s.casefold()


def _casefold_decimal(s: str) -> str:
    folded = s.casefold()
    if re.fullmatch(DEFAULT_NUMERAL_PATTERN, folded) and "," in folded:
        return folded.replace(",", ".")
    return folded


IDENTITY_NORMALIZER = Normalizer("identity", lambda s: s)
CASEFOLD_NORMALIZER = Normalizer("casefold", _casefold)
CASEFOLD_DECIMAL_NORMALIZER = Normalizer("casefold_decimal", _casefold_decimal)

_NORMALIZERS: dict[str, Normalizer] = {
    n.name: n for n in (IDENTITY_NORMALIZER, CASEFOLD_NORMALIZER, CASEFOLD_DECIMAL_NORMALIZER)
}


def register_normalizer(normalizer: Normalizer) -> None:
    _NORMALIZERS[normalizer.name] = normalizer


def get_normalizer(name: str) -> Normalizer:
    try:
        return _NORMALIZERS[name]
    except KeyError:
        raise ConfigError(f"unknown normalizer {name!r}") from None


def _trim(text: str, start: int, end: int) -> tuple[int, int]:
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    return start, end


def _split_spans(
    text: str, start: int, end: int, delimiter: re.Pattern[str]
) -> list[tuple[int, int]]:
    """Non-empty trimmed chunks of text[start:end] between delimiter matches."""
    spans: list[tuple[int, int]] = []
    cursor = start
    for m in delimiter.finditer(text, start, end):
        if m.start() == m.end():
            continue
        s, e = _trim(text, cursor, m.start())
        if s < e:
            spans.append((s, e))
        cursor = m.end()
    s, e = _trim(text, cursor, end)
    if s < e:
        spans.append((s, e))
    return spans


def _preceding_token(text: str, start: int, pos: int) -> str:
    """Maximal non-space run ending right before pos, leading punctuation stripped."""
    m = re.search(r"\S+\Z", text[start:pos])
    if not m:
        return ""
    raw = m.group(0)
    while raw and unicodedata.category(raw[0]).startswith("P"):
        raw = raw[1:]
    return raw


def _sentence_spans(
    text: str, start: int, end: int, rules: SegmentationRules
) -> list[tuple[int, int]]:
    delimiter = _compiled(rules.sentence_delimiter)
    numeral = _compiled(rules.numeral_pattern)
    spans: list[tuple[int, int]] = []
    cursor = start
    for m in delimiter.finditer(text, start, end):
        matched = m.group(0)
        # Non-space prefix of the match stays inside the sentence.
        prefix_len = 0
        while prefix_len < len(matched) and not matched[prefix_len].isspace():
            prefix_len += 1
        boundary = m.start() + prefix_len
        if boundary <= cursor:
            continue
        if prefix_len and matched[prefix_len - 1] == ".":
            token = _preceding_token(text, cursor, boundary - 1)
            guarded_prev = (
                (len(token) == 1 and token.isupper())
                or token in rules.abbreviations
                or bool(numeral.fullmatch(token))
            )
            following = text[m.end()] if m.end() < end else ""
            guarded_next = bool(following) and (following.isdigit() or following.islower())
            if guarded_prev and guarded_next:
                continue
        s, e = _trim(text, cursor, boundary)
        if s < e:
            spans.append((s, e))
        cursor = m.end()
    s, e = _trim(text, cursor, end)
    if s < e:
        spans.append((s, e))
    return spans


def _phrase_spans(
    text: str, start: int, end: int, rules: SegmentationRules
) -> list[tuple[int, int]]:
    delimiter = _compiled(rules.phrase_delimiter)
    numeral = _compiled(rules.numeral_pattern)
    protected = [
        (m.start(), m.end()) for m in numeral.finditer(text, start, end) if m.end() - m.start() > 1
    ]
    spans: list[tuple[int, int]] = []
    cursor = start
    for m in delimiter.finditer(text, start, end):
        if m.start() == m.end():
            continue
        if any(ns < m.start() and m.end() < ne for ns, ne in protected):
            continue
        s, e = _trim(text, cursor, m.start())
        if s < e:
            spans.append((s, e))
        cursor = m.end()
    s, e = _trim(text, cursor, end)
    if s < e:
        spans.append((s, e))
    return spans


def segment(text: str, rules: SegmentationRules = DEFAULT_RULES) -> ConstituentTree:
    """Split text into a document/paragraph/sentence/phrase tree.

    Total over arbitrary input; never yields an empty constituent.
    """
    paragraph_delim = _compiled(rules.paragraph_delimiter)
    nodes: list[Constituent] = []
    root_children: list[int] = []
    # Placeholder for the root; patched once its children are known.
    nodes.append(Constituent(0, Level.DOCUMENT, 0, len(text), None))
    for ps, pe in _split_spans(text, 0, len(text), paragraph_delim):
        para_id = len(nodes)
        nodes.append(Constituent(para_id, Level.PARAGRAPH, ps, pe, 0))
        para_children: list[int] = []
        for ss, se in _sentence_spans(text, ps, pe, rules):
            sent_id = len(nodes)
            nodes.append(Constituent(sent_id, Level.SENTENCE, ss, se, para_id))
            phrase_ids = []
            for hs, he in _phrase_spans(text, ss, se, rules):
                phrase_id = len(nodes)
                nodes.append(Constituent(phrase_id, Level.PHRASE, hs, he, sent_id))
                phrase_ids.append(phrase_id)
            nodes[sent_id] = replace(nodes[sent_id], children=tuple(phrase_ids))
            para_children.append(sent_id)
        nodes[para_id] = replace(nodes[para_id], children=tuple(para_children))
        root_children.append(para_id)
    nodes[0] = replace(nodes[0], children=tuple(root_children))
    return ConstituentTree(tuple(nodes))


def _scan_tokens(text: str, start: int, end: int, rules: SegmentationRules) -> list[Token]:
    numeral = _compiled(rules.numeral_pattern)
    tokens: list[Token] = []
    pos = start
    while pos < end:
        if text[pos].isspace():
            pos += 1
            continue
        m = numeral.match(text, pos, end)
        if m:
            surface, klass = m.group(0), TokenClass.NUMERAL
        else:
            w = _WORD_RE.match(text, pos, end)
            if w:
                surface, klass = w.group(0), TokenClass.WORD
            else:
                surface, klass = text[pos], TokenClass.PUNCT
        tokens.append(Token(surface, surface, len(tokens), klass, pos))
        pos += len(surface)
    return tokens


def tokenize(
    doc_text: str, phrase: Constituent, rules: SegmentationRules = DEFAULT_RULES
) -> tuple[Token, ...]:
    """Tokenize one phrase into Word/Numeral/Punct tokens.

    Numerals win over words at the same position, so "1.5" stays a single
    numeral token.
    """
    if phrase.level != Level.PHRASE:
        raise LevelError(f"tokenize expects a phrase, got {phrase.level.tag}")
    return tuple(_scan_tokens(doc_text, phrase.start, phrase.end, rules))


def normalize_tokens(tokens: Iterable[Token], normalizer: Normalizer) -> tuple[Token, ...]:
    """Rewrite every token's normalized form; surfaces and order are untouched."""
    return tuple(replace(t, normalized=normalizer(t.surface)) for t in tokens)


def build_document(
    doc_id: str,
    language: str,
    text: str,
    rules: SegmentationRules = DEFAULT_RULES,
    normalizer: Normalizer = CASEFOLD_NORMALIZER,
) -> Document:
    """Segment, tokenize and normalize one raw text into a Document."""
    tree = segment(text, rules)
    tokens = {
        c.cid: normalize_tokens(tokenize(text, c, rules), normalizer)
        for c in tree.nodes
        if c.level == Level.PHRASE
    }
    return Document(doc_id=doc_id, language=language, text=text, tree=tree, tokens=tokens)
