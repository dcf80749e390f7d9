"""Shared fixtures: hand-built bitexts with known beads and random corpora."""

from __future__ import annotations

import random

import pytest

from alignlex.aligner import AnchorSignature, align_bitext
from alignlex.archive import Archive
from alignlex.assigner import assign
from alignlex.config import DEFAULT_CONFIG
from alignlex.lexica import detect_forks, extract_phrases
from alignlex.model import Bitext, Level, Link
from alignlex.segmenter import build_document


@pytest.fixture
def merged_bead_bitext() -> Bitext:
    """Two source sentences merged into one target sentence, plus a
    source-only paragraph; links are assembled by hand.

    Source cids: 0 root, 1 para, 2 sent "Alpha beta.", 3 its phrase,
    4 sent "Gamma delta.", 5 its phrase, 6 orphan para, 7 its sent,
    8 its phrase. Target cids: 0 root, 1 para, 2 sent, 3 phrase.
    """
    source = build_document("s", "xx", "Alpha beta. Gamma delta.\n\nOrphan words here.")
    target = build_document("t", "yy", "Alfa beta gamma delta.")
    links = {
        Level.DOCUMENT: (Link(Level.DOCUMENT, (0,), (0,)),),
        Level.PARAGRAPH: (
            Link(Level.PARAGRAPH, (1,), (1,)),
            Link(Level.PARAGRAPH, (6,), ()),
        ),
        Level.SENTENCE: (Link(Level.SENTENCE, (2, 4), (2,)),),
        Level.PHRASE: (Link(Level.PHRASE, (3, 5), (3,)),),
    }
    return Bitext(bitext_id="s__t", source=source, target=target, links=links)


def make_parallel_pair(seed: int, n_paragraphs: int = 3):
    """A small self-similar parallel pair built from a word dictionary."""
    rng = random.Random(seed)
    vocab = [f"w{i}" for i in range(20)]
    translate = {w: f"v{i}" for i, w in enumerate(vocab)}
    paragraphs_src = []
    paragraphs_tgt = []
    for _ in range(n_paragraphs):
        sentences_src = []
        sentences_tgt = []
        for _ in range(rng.randint(1, 4)):
            words = rng.sample(vocab, rng.randint(2, 5))
            sentences_src.append(" ".join(words) + ".")
            mirrored = [translate[w] for w in words]
            rng.shuffle(mirrored)
            sentences_tgt.append(" ".join(mirrored) + ".")
        paragraphs_src.append(" ".join(sentences_src))
        paragraphs_tgt.append(" ".join(sentences_tgt))
    return "\n\n".join(paragraphs_src) + "\n", "\n\n".join(paragraphs_tgt) + "\n", translate


def random_archive(seed: int) -> Archive:
    """A randomized but deterministic archive exercising every section."""
    rng = random.Random(seed)
    documents = []
    bitexts = []
    for k in range(rng.randint(1, 3)):
        src_text, tgt_text, _ = make_parallel_pair(seed * 31 + k, rng.randint(1, 3))
        source = build_document(f"src{k}", "xx", src_text)
        target = build_document(f"tgt{k}", "yy", tgt_text)
        documents.extend([source, target])
        bitexts.append(align_bitext(source, target))
    lexicon = None
    phrase_lists = None
    forks = None
    if rng.random() < 0.8:
        lexicon = assign(bitexts)
        if rng.random() < 0.6:
            phrase_lists = {
                side: extract_phrases(bitexts, side=side, lexicon=lexicon)
                for side in ("source", "target")
            }
        if rng.random() < 0.6:
            forks = detect_forks(lexicon)
    return Archive(
        config=DEFAULT_CONFIG,
        documents=tuple(documents),
        bitexts=tuple(bitexts),
        lexicon=lexicon,
        phrase_lists=phrase_lists,
        forks=forks,
    )


def random_signature(rng: random.Random) -> AnchorSignature:
    numerals = tuple(str(rng.randint(1, 40)) for _ in range(rng.choice((0, 0, 0, 1, 1, 2))))
    punct = tuple(rng.choice(".,;()") for _ in range(rng.choice((0, 1, 1, 2, 3))))
    return AnchorSignature(punct=punct, numerals=numerals, word_count=rng.randint(0, 30))


def mutate_signatures(rng: random.Random, sigs: list[AnchorSignature]) -> list[AnchorSignature]:
    """A plausibly-parallel counterpart sequence: mostly 1:1 with jitter,
    occasional merges, drops and insertions."""
    out: list[AnchorSignature] = []
    i = 0
    while i < len(sigs):
        roll = rng.random()
        sig = sigs[i]
        if roll < 0.72 or i + 1 >= len(sigs):
            out.append(_jitter(rng, sig))
            i += 1
        elif roll < 0.84:
            nxt = sigs[i + 1]
            out.append(
                AnchorSignature(
                    punct=sig.punct + nxt.punct,
                    numerals=sig.numerals + nxt.numerals,
                    word_count=sig.word_count + nxt.word_count,
                )
            )
            i += 2
        elif roll < 0.94:
            i += 1  # dropped on the counterpart side
        else:
            out.append(random_signature(rng))
            out.append(_jitter(rng, sig))
            i += 1
    if not out:
        out.append(random_signature(rng))
    return out


def _jitter(rng: random.Random, sig: AnchorSignature) -> AnchorSignature:
    wc = max(0, sig.word_count + rng.randint(-2, 2))
    return AnchorSignature(punct=sig.punct, numerals=sig.numerals, word_count=wc)


def as_triple(sig: AnchorSignature):
    return (sig.punct, sig.numerals, sig.word_count)
