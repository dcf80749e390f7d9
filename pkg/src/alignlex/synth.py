"""Deterministic synthetic bilingual corpora for benchmarks and fixtures.

The generator plants a known 1:1 dictionary, renders parallel texts whose
target phrases shuffle word order, and injects one-sided out-of-vocabulary
noise tokens. Because the dictionary is known, presented assignments can
be scored for precision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Optional

from .assigner import CounterwordLexicon

_CONSONANTS = "bcdfgklmnprstvz"
_VOWELS = "aeiou"


def _pseudo_word(rng: random.Random, length: int) -> str:
    chars = []
    for i in range(length):
        pool = _CONSONANTS if i % 2 == 0 else _VOWELS
        chars.append(rng.choice(pool))
    return "".join(chars)


def _distinct_word(rng: random.Random, length: int, taken: set[str]) -> str:
    while True:
        word = _pseudo_word(rng, length)
        if word not in taken:
            taken.add(word)
            return word


@dataclass(frozen=True)
class SynthCorpus:
    source_text: str
    target_text: str
    dictionary: Mapping[str, str]  # source type -> the one true target type
    noise_words: tuple[str, ...]


def build_parallel_texts(
    seed: int = 7,
    n_sentences: int = 200,
    dictionary_size: int = 50,
    noise_rate: float = 0.05,
    max_phrases_per_sentence: int = 2,
    min_phrase_words: int = 3,
    max_phrase_words: int = 5,
    sentences_per_paragraph: int = 5,
) -> SynthCorpus:
    """Render a parallel text pair from a planted dictionary.

    Source and target words of one dictionary entry share their length, so
    the length measure is exact for true pairs. Noise tokens are fresh
    20..24-character types inserted on one side only, alternating sides by
    sentence, modelling material left untranslated.
    """
    rng = random.Random(seed)
    taken: set[str] = set()
    dictionary: dict[str, str] = {}
    for _ in range(dictionary_size):
        length = rng.randint(4, 8)
        src = _distinct_word(rng, length, taken)
        tgt = _distinct_word(rng, length, taken)
        dictionary[src] = tgt
    source_words = sorted(dictionary)

    sentences: list[tuple[list[list[str]], list[list[str]]]] = []
    content_tokens = 0
    for _ in range(n_sentences):
        n_phrases = rng.randint(1, max_phrases_per_sentence)
        src_phrases: list[list[str]] = []
        tgt_phrases: list[list[str]] = []
        for _ in range(n_phrases):
            k = rng.randint(min_phrase_words, max_phrase_words)
            chosen = rng.sample(source_words, k)
            translated = [dictionary[w] for w in chosen]
            rng.shuffle(translated)
            src_phrases.append(chosen)
            tgt_phrases.append(translated)
            content_tokens += k
        sentences.append((src_phrases, tgt_phrases))

    noise_words: list[str] = []
    n_noise = round(noise_rate * content_tokens)
    for k in range(n_noise):
        sent_idx = rng.randrange(n_sentences)
        side_phrases = sentences[sent_idx][0] if sent_idx % 2 == 0 else sentences[sent_idx][1]
        phrase = side_phrases[rng.randrange(len(side_phrases))]
        word = _distinct_word(rng, rng.randint(20, 24), taken)
        phrase.insert(rng.randrange(len(phrase) + 1), word)
        noise_words.append(word)

    def render(side: int) -> str:
        paragraphs: list[str] = []
        rendered: list[str] = []
        for idx, pair in enumerate(sentences):
            phrases = pair[side]
            rendered.append(", ".join(" ".join(p) for p in phrases) + ".")
            if (idx + 1) % sentences_per_paragraph == 0:
                paragraphs.append(" ".join(rendered))
                rendered = []
        if rendered:
            paragraphs.append(" ".join(rendered))
        return "\n\n".join(paragraphs) + "\n"

    return SynthCorpus(
        source_text=render(0),
        target_text=render(1),
        dictionary=dictionary,
        noise_words=tuple(noise_words),
    )


@dataclass(frozen=True)
class PrecisionReport:
    presented: int
    correct: int

    @property
    def precision(self) -> float:
        return self.correct / self.presented if self.presented else 1.0


def precision_against_dictionary(
    lexicon: CounterwordLexicon,
    dictionary: Mapping[str, str],
    threshold: Optional[float] = None,
) -> PrecisionReport:
    """Precision of presented assignments against a reference dictionary.

    For each source type the assignment is its best-scoring candidate; it
    is presented when that score clears the threshold. An assignment is
    correct when the dictionary maps the source type to exactly that
    counterpart. The precision of an empty presented set is 1.0.
    """
    cut = lexicon.threshold if threshold is None else threshold
    best: dict[str, tuple[float, str]] = {}
    for e in lexicon.entries:
        seen = best.get(e.source_type)
        if seen is None or e.score > seen[0]:
            best[e.source_type] = (e.score, e.target_type)
    presented = 0
    correct = 0
    for source_type, (score, target_type) in sorted(best.items()):
        if score < cut:
            continue
        presented += 1
        if dictionary.get(source_type) == target_type:
            correct += 1
    return PrecisionReport(presented=presented, correct=correct)


def zipf_text(
    seed: int = 11,
    n_tokens: int = 2000,
    vocabulary: int = 400,
    words_per_sentence: int = 8,
    sentences_per_paragraph: int = 6,
) -> str:
    """A monolingual text with Zipf-distributed word frequencies."""
    rng = random.Random(seed)
    taken: set[str] = set()
    words = [_distinct_word(rng, rng.randint(3, 9), taken) for _ in range(vocabulary)]
    weights = [1.0 / rank for rank in range(1, vocabulary + 1)]
    drawn = rng.choices(words, weights=weights, k=n_tokens)
    sentences = []
    for i in range(0, len(drawn), words_per_sentence):
        sentences.append(" ".join(drawn[i : i + words_per_sentence]) + ".")
    paragraphs = []
    for i in range(0, len(sentences), sentences_per_paragraph):
        paragraphs.append(" ".join(sentences[i : i + sentences_per_paragraph]))
    return "\n\n".join(paragraphs) + "\n"
