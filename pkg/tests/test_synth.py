"""The synthetic corpus generator itself: determinism and stated knobs."""

from __future__ import annotations

from alignlex.model import TokenClass
from alignlex.segmenter import build_document
from alignlex.synth import build_parallel_texts, zipf_text


def test_generator_is_deterministic():
    a = build_parallel_texts(seed=7)
    b = build_parallel_texts(seed=7)
    assert a.source_text == b.source_text
    assert a.target_text == b.target_text
    assert a.dictionary == b.dictionary
    assert build_parallel_texts(seed=8).source_text != a.source_text


def test_generator_respects_dictionary_size_and_noise_rate():
    corpus = build_parallel_texts(seed=7, n_sentences=200, dictionary_size=50, noise_rate=0.05)
    assert len(corpus.dictionary) == 50
    doc = build_document("s", "xx", corpus.source_text)
    tokens = sum(
        1 for ts in doc.tokens.values() for t in ts if t.klass is TokenClass.WORD
    )
    noise_src = sum(1 for w in corpus.noise_words if w in corpus.source_text)
    content = tokens - noise_src  # dictionary tokens per side
    assert len(corpus.noise_words) == round(0.05 * content)


def test_dictionary_words_share_length_across_sides():
    corpus = build_parallel_texts(seed=7)
    assert all(len(s) == len(t) for s, t in corpus.dictionary.items())
    assert all(len(w) >= 20 for w in corpus.noise_words)


def test_zipf_text_is_deterministic_and_sized():
    a = zipf_text(seed=3, n_tokens=500, vocabulary=100)
    assert a == zipf_text(seed=3, n_tokens=500, vocabulary=100)
    doc = build_document("d", "xx", a)
    words = sum(1 for ts in doc.tokens.values() for t in ts if t.klass is TokenClass.WORD)
    assert words == 500
