"""Segmentation totality, robustness guards and tokenization."""

from __future__ import annotations

import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alignlex.errors import ConfigError, LevelError
from alignlex.model import Level, TokenClass, validate_tree
from alignlex.segmenter import (
    CASEFOLD_NORMALIZER,
    DEFAULT_RULES,
    IDENTITY_NORMALIZER,
    Normalizer,
    SegmentationRules,
    build_document,
    check_pattern,
    normalize_tokens,
    segment,
    tokenize,
)


def sentences_per_paragraph(tree):
    root = tree.root
    return [len(tree.get(p).children) for p in root.children]


def test_empty_text_gives_root_only():
    tree = segment("")
    assert len(tree.nodes) == 1
    assert tree.root.children == ()


def test_two_paragraphs_with_sentence_counts():
    # Hand count: paragraph one has two sentences, paragraph two has one.
    tree = segment("One. Two.\n\nThree.")
    assert len(tree.root.children) == 2
    assert sentences_per_paragraph(tree) == [2, 1]


def test_numeral_split_does_not_break_sentence():
    # "1. 5" is a typo for "1.5" and must not end the sentence.
    tree = segment("Section 1. 5 applies.")
    assert sentences_per_paragraph(tree) == [1]


def test_uppercase_initial_guard():
    tree = segment("Mr A. smith agreed. Next sentence.")
    assert sentences_per_paragraph(tree) == [2]


def test_abbreviation_guard_is_configurable():
    text = "See Art. 12 below. Then more."
    assert sentences_per_paragraph(segment(text)) == [3]
    rules = SegmentationRules(abbreviations=frozenset({"Art"}))
    assert sentences_per_paragraph(segment(text, rules)) == [2]


def test_phrase_split_excludes_delimiter():
    doc = build_document("d", "en", "pigs, 12 cows.")
    phrases = doc.tree.at_level(Level.PHRASE)
    assert [doc.text[p.start : p.end] for p in phrases] == ["pigs", "12 cows."]


def test_tokenize_word_only_phrase():
    doc = build_document("d", "en", "pigs, 12 cows.")
    first = doc.tree.at_level(Level.PHRASE)[0]
    tokens = tokenize(doc.text, first)
    assert [(t.surface, t.klass) for t in tokens] == [("pigs", TokenClass.WORD)]


def test_tokenize_numeral_word_punct():
    doc = build_document("d", "en", "pigs, 12 cows.")
    second = doc.tree.at_level(Level.PHRASE)[1]
    tokens = tokenize(doc.text, second)
    assert [(t.surface, t.klass) for t in tokens] == [
        ("12", TokenClass.NUMERAL),
        ("cows", TokenClass.WORD),
        (".", TokenClass.PUNCT),
    ]
    assert [t.index for t in tokens] == [0, 1, 2]


def test_decimal_numeral_is_one_token():
    doc = build_document("d", "en", "Rate is 1.5 now.")
    phrase = doc.tree.at_level(Level.PHRASE)[0]
    numerals = [t.surface for t in doc.phrase_tokens(phrase.cid) if t.klass is TokenClass.NUMERAL]
    assert numerals == ["1.5"]


def test_comma_decimal_is_protected_from_phrase_split():
    doc = build_document("d", "xx", "Varde 1,5 procent.")
    phrases = doc.tree.at_level(Level.PHRASE)
    assert len(phrases) == 1
    numerals = [t.surface for t in doc.phrase_tokens(phrases[0].cid) if t.klass is TokenClass.NUMERAL]
    assert numerals == ["1,5"]


def test_tokenize_rejects_non_phrase():
    doc = build_document("d", "en", "One two.")
    with pytest.raises(LevelError):
        tokenize(doc.text, doc.tree.root)


def test_default_normalizer_casefolds():
    doc = build_document("d", "en", "Make way.")
    phrase = doc.tree.at_level(Level.PHRASE)[0]
    assert [t.normalized for t in doc.phrase_tokens(phrase.cid)] == ["make", "way", "."]
    assert [t.surface for t in doc.phrase_tokens(phrase.cid)] == ["Make", "way", "."]


def test_identity_normalizer_keeps_everything():
    doc = build_document("d", "en", "Make way.", normalizer=IDENTITY_NORMALIZER)
    phrase = doc.tree.at_level(Level.PHRASE)[0]
    tokens = doc.phrase_tokens(phrase.cid)
    assert [t.normalized for t in tokens] == [t.surface for t in tokens]


def test_stub_lemmatizer_collapses_types():
    lemmas = {"made": "make", "making": "make"}
    stub = Normalizer("stub", lambda s: lemmas.get(s.casefold(), s.casefold()))
    doc = build_document("d", "en", "make made making.")
    phrase = doc.tree.at_level(Level.PHRASE)[0]
    raw = tokenize(doc.text, phrase)
    assert len({t.normalized for t in raw if t.klass is TokenClass.WORD}) == 3
    normalized = normalize_tokens(raw, stub)
    assert len({t.normalized for t in normalized if t.klass is TokenClass.WORD}) == 1
    assert [t.surface for t in normalized] == [t.surface for t in raw]
    assert len(normalized) == len(raw)


def _phrase_reconstruction(text, tree):
    spans = sorted(
        (c.start, c.end) for c in tree.nodes if c.level == Level.PHRASE
    )
    rebuilt = []
    pos = 0
    for start, end in spans:
        assert pos <= start, "phrase spans overlap or are out of order"
        rebuilt.append(text[pos:start])
        rebuilt.append(text[start:end])
        pos = end
    rebuilt.append(text[pos:])
    return "".join(rebuilt), spans


@settings(max_examples=150, deadline=None)
@given(st.text(max_size=300))
def test_segmentation_is_total_and_reconstructs(text):
    tree = segment(text)
    validate_tree(text, tree)
    rebuilt, spans = _phrase_reconstruction(text, tree)
    assert rebuilt == text
    # Word material never lands in the gaps between phrase spans.
    gaps = []
    pos = 0
    for start, end in spans:
        gaps.append(text[pos:start])
        pos = end
    gaps.append(text[pos:])
    word_re = re.compile(r"[^\W\d_]")
    for gap in gaps:
        assert not word_re.search(gap)


@settings(max_examples=60, deadline=None)
@given(st.text(max_size=200))
def test_segmentation_is_deterministic(text):
    assert segment(text) == segment(text)


def test_word_counts_live_in_phrases_only():
    doc = build_document("d", "en", "Alpha beta, gamma. Delta!\n\nEps zeta.")
    total = sum(
        1
        for tokens in doc.tokens.values()
        for t in tokens
        if t.klass is TokenClass.WORD
    )
    assert total == 6


def test_rules_reject_backreferences():
    with pytest.raises(ConfigError):
        check_pattern(r"(a)\1", "sentence_delimiter")
    with pytest.raises(ConfigError):
        SegmentationRules(phrase_delimiter=r"(?P<x>a)(?P=x)")
    with pytest.raises(ConfigError):
        SegmentationRules(numeral_pattern=r"[0-9")


def test_normalizer_must_keep_empty_string():
    with pytest.raises(ConfigError):
        Normalizer("broken", lambda s: s + "x")
