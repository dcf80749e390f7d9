"""Countertext ladders, concordance and counterword lookup."""

from __future__ import annotations

import random

import pytest

from alignlex.aligner import align_bitext
from alignlex.archive import Archive
from alignlex.assigner import LOW_CONFIDENCE, assign
from alignlex.config import DEFAULT_CONFIG
from alignlex.errors import ConfigError, SpanRangeError
from alignlex.model import Level, TokenClass
from alignlex.queries import concordance, counterwords_query, countertext
from alignlex.segmenter import build_document

from conftest import make_parallel_pair
from test_assigner import linked_pair


def aligned_archive(seed=21, n_paragraphs=4):
    src_text, tgt_text, _ = make_parallel_pair(seed, n_paragraphs)
    source = build_document("src", "xx", src_text)
    target = build_document("tgt", "yy", tgt_text)
    bitext = align_bitext(source, target)
    lexicon = assign([bitext])
    return Archive(
        config=DEFAULT_CONFIG,
        documents=(source, target),
        bitexts=(bitext,),
        lexicon=lexicon,
    )


def test_countertext_whole_document_single_rung():
    archive = aligned_archive()
    bitext = archive.bitexts[0]
    rungs = countertext(bitext, "source", 0, len(bitext.source.text))
    assert len(rungs) == 1
    assert rungs[0].constituent.level == Level.DOCUMENT
    assert [c.cid for c in rungs[0].counterparts] == [0]


def test_countertext_linked_phrase_has_four_present_rungs():
    archive = aligned_archive()
    bitext = archive.bitexts[0]
    phrase = bitext.source.tree.at_level(Level.PHRASE)[0]
    rungs = countertext(bitext, "source", phrase.start, phrase.end)
    assert [r.constituent.level for r in rungs] == [
        Level.PHRASE,
        Level.SENTENCE,
        Level.PARAGRAPH,
        Level.DOCUMENT,
    ]
    assert all(r.linked for r in rungs)


def test_countertext_ladder_length_is_depth_plus_one():
    archive = aligned_archive()
    bitext = archive.bitexts[0]
    doc = bitext.source
    rng = random.Random(9)
    for _ in range(50):
        start = rng.randint(0, len(doc.text))
        end = rng.randint(start, len(doc.text))
        rungs = countertext(bitext, "source", start, end)
        assert len(rungs) == doc.tree.depth(rungs[0].constituent) + 1


def test_countertext_counterparts_nest_up_the_ladder():
    # For 1:1 chains each rung's counterpart region contains the previous
    # rung's counterpart region on the opposite side.
    archive = aligned_archive()
    bitext = archive.bitexts[0]
    rng = random.Random(3)
    n = len(bitext.source.text)
    for _ in range(40):
        start = rng.randint(0, n)
        end = rng.randint(start, n)
        rungs = countertext(bitext, "source", start, end)
        for below, above in zip(rungs, rungs[1:]):
            if not (below.linked and above.linked):
                continue
            if below.link.shape != (1, 1) or above.link.shape != (1, 1):
                continue
            inner = below.counterparts[0]
            outer = above.counterparts[0]
            assert outer.start <= inner.start and inner.end <= outer.end


def test_countertext_merged_bead_shares_counterpart(merged_bead_bitext):
    bitext = merged_bead_bitext
    phrase = bitext.source.tree.get(3)
    rungs = countertext(bitext, "source", phrase.start + 1, phrase.end - 1)
    by_level = {r.constituent.level: r for r in rungs}
    sentence_rung = by_level[Level.SENTENCE]
    assert [c.cid for c in sentence_rung.counterparts] == [2]
    sibling_rungs = countertext(bitext, "source", 13, 18)  # inside "Gamma delta."
    sibling_sentence = {r.constituent.level: r for r in sibling_rungs}[Level.SENTENCE]
    assert [c.cid for c in sibling_sentence.counterparts] == [2]


def test_countertext_unlinked_rung_is_marked(merged_bead_bitext):
    bitext = merged_bead_bitext
    orphan = bitext.source.tree.get(8)  # phrase of the orphan paragraph
    rungs = countertext(bitext, "source", orphan.start, orphan.end)
    linked_flags = {r.constituent.level: r.linked for r in rungs}
    assert linked_flags[Level.PHRASE] is False
    assert linked_flags[Level.SENTENCE] is False
    assert linked_flags[Level.PARAGRAPH] is False  # 1:0 bead
    assert linked_flags[Level.DOCUMENT] is True


def test_countertext_gap_selection_resolves_to_document(merged_bead_bitext):
    bitext = merged_bead_bitext
    text = bitext.source.text
    gap = text.index("\n\n")
    rungs = countertext(bitext, "source", gap, gap + 2)
    assert rungs[0].constituent.level == Level.DOCUMENT


def test_countertext_out_of_range():
    archive = aligned_archive()
    bitext = archive.bitexts[0]
    with pytest.raises(SpanRangeError):
        countertext(bitext, "source", 0, len(bitext.source.text) + 5)


def test_concordance_absent_term():
    archive = aligned_archive()
    result = concordance(archive, "nonexistentword", "source")
    assert result.total == 0
    assert result.hits == ()


def test_concordance_limit_and_total():
    texts = "one common word. another common word. third common word.\n"
    source = build_document("src", "xx", texts)
    target = build_document("tgt", "yy", texts)
    bitext = align_bitext(source, target)
    archive = Archive(config=DEFAULT_CONFIG, documents=(source, target), bitexts=(bitext,))
    result = concordance(archive, "common", "source", limit=2)
    assert result.total == 3
    assert len(result.hits) == 2


def test_concordance_multiword_matches_linear_scan():
    src_text, tgt_text, _ = make_parallel_pair(seed=33, n_paragraphs=6)
    source = build_document("src", "xx", src_text)
    target = build_document("tgt", "yy", tgt_text)
    bitext = align_bitext(source, target)
    archive = Archive(config=DEFAULT_CONFIG, documents=(source, target), bitexts=(bitext,))

    def scan(words):
        found = []
        for doc in archive.side_documents("source"):
            for phrase in doc.tree.at_level(Level.PHRASE):
                tokens = [
                    t.normalized
                    for t in doc.phrase_tokens(phrase.cid)
                    if t.klass is TokenClass.WORD
                ]
                for i in range(len(tokens) - len(words) + 1):
                    if tuple(tokens[i : i + len(words)]) == words:
                        found.append((doc.doc_id, phrase.cid))
        return found

    rng = random.Random(2)
    vocab = sorted(
        {
            t.normalized
            for doc in archive.side_documents("source")
            for ts in doc.tokens.values()
            for t in ts
            if t.klass is TokenClass.WORD
        }
    )
    for _ in range(40):
        n = rng.choice((1, 2))
        words = tuple(rng.choice(vocab) for _ in range(n))
        expected = scan(words)
        got = concordance(archive, " ".join(words), "source", limit=10_000)
        assert got.total == len(expected)
        assert [(h.doc_id, h.phrase.cid) for h in got.hits] == expected


def test_concordance_highlight_inside_phrase_and_counterpart_present():
    archive = aligned_archive()
    doc = archive.bitexts[0].source
    some_word = next(
        t.normalized
        for ts in doc.tokens.values()
        for t in ts
        if t.klass is TokenClass.WORD
    )
    result = concordance(archive, some_word, "source", limit=5)
    assert result.total >= 1
    for hit in result.hits:
        assert hit.phrase.start <= hit.highlight[0] <= hit.highlight[1] <= hit.phrase.end
        assert hit.sentence_span[0] <= hit.phrase.start
        for ref in hit.counterparts:
            assert ref.doc_id == "tgt"
            assert ref.text


def test_concordance_validates_limit_and_term():
    archive = aligned_archive()
    with pytest.raises(ConfigError):
        concordance(archive, "word", "source", limit=0)
    with pytest.raises(ConfigError):
        concordance(archive, "   ", "source")


def test_counterwords_above_threshold():
    bitext = linked_pair("\n\n".join(["word."] * 6) + "\n", "\n\n".join(["mots."] * 6) + "\n")
    archive = Archive(
        config=DEFAULT_CONFIG,
        documents=(bitext.source, bitext.target),
        bitexts=(bitext,),
        lexicon=assign([bitext]),
    )
    answer = counterwords_query(archive, "Word", "source")
    assert answer.found
    assert [e.target_type for e in answer.entries] == ["mots"]
    assert answer.evaluation.flags == ()


def test_counterwords_below_threshold_everywhere():
    bitext = linked_pair("aaaa bbbb.\n", "c d.\n")
    archive = Archive(
        config=DEFAULT_CONFIG,
        documents=(bitext.source, bitext.target),
        bitexts=(bitext,),
        lexicon=assign([bitext], threshold=0.99),
    )
    answer = counterwords_query(archive, "aaaa", "source")
    assert answer.found
    assert answer.entries == ()
    assert LOW_CONFIDENCE in answer.evaluation.flags


def test_counterwords_unknown_word():
    archive = aligned_archive()
    answer = counterwords_query(archive, "zzzznope", "source")
    assert not answer.found


def test_counterwords_reverse_direction_on_target_fork():
    sources = ["vessel."] * 4 + ["shippo."] * 4
    targets = ["fartyg."] * 8
    bitext = linked_pair("\n\n".join(sources) + "\n", "\n\n".join(targets) + "\n")
    archive = Archive(
        config=DEFAULT_CONFIG,
        documents=(bitext.source, bitext.target),
        bitexts=(bitext,),
        lexicon=assign([bitext]),
    )
    answer = counterwords_query(archive, "fartyg", "target")
    assert answer.found
    assert {e.source_type for e in answer.entries} == {"vessel", "shippo"}
