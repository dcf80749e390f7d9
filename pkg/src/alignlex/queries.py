"""Translator-facing queries over an archive: countertext ladders,
concordance with counterparts, counterword lookup."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .archive import Archive
from .assigner import CounterwordEntry, SelfEvaluation, self_evaluation
from .errors import ConfigError
from .model import (
    SOURCE,
    Bitext,
    Constituent,
    Document,
    Level,
    Link,
    TokenClass,
    context_ladder,
    counterpart,
    smallest_enclosing,
)
from .segmenter import Normalizer


@dataclass(frozen=True)
class LadderRung:
    """One context level: a constituent and its counterparts, if linked."""

    constituent: Constituent
    counterparts: tuple[Constituent, ...]
    link: Optional[Link]

    @property
    def linked(self) -> bool:
        return bool(self.counterparts)


def countertext(bitext: Bitext, side: str, start: int, end: int) -> tuple[LadderRung, ...]:
    """Successively larger contexts of a span and their counterparts.

    Rungs run from the smallest enclosing constituent up to the document
    root; unlinked rungs carry an empty counterpart tuple.
    """
    doc = bitext.document(side)
    ladder = context_ladder(doc, smallest_enclosing(doc, start, end))
    rungs = []
    for c in ladder:
        found = counterpart(bitext, c, side)
        if found is None:
            rungs.append(LadderRung(c, (), bitext.link_of(c.level, c.cid, side)))
        else:
            rungs.append(LadderRung(c, found[0], found[1]))
    return tuple(rungs)


@dataclass(frozen=True)
class CounterpartRef:
    doc_id: str
    start: int
    end: int
    text: str


@dataclass(frozen=True)
class ConcordanceHit:
    """One phrase containing the query term, with its linked counterpart."""

    doc_id: str
    phrase: Constituent
    highlight: tuple[int, int]
    sentence_span: tuple[int, int]
    sentence_text: str
    counterparts: tuple[CounterpartRef, ...]


@dataclass(frozen=True)
class ConcordanceResult:
    term: tuple[str, ...]
    side: str
    total: int
    hits: tuple[ConcordanceHit, ...]


def concordance(
    archive: Archive,
    term: str,
    side: str,
    normalizer: Optional[Normalizer] = None,
    limit: int = 20,
) -> ConcordanceResult:
    """All phrases containing the normalized word or contiguous word sequence.

    Contiguity is over the phrase's word tokens; punctuation and numerals
    between words do not break a match. Hits come in corpus order and are
    truncated at ``limit``, with the untruncated total reported.
    """
    if limit < 1:
        raise ConfigError(f"limit must be >= 1, got {limit}")
    if normalizer is None:
        normalizer = archive.config.normalizer
    words = tuple(normalizer(w) for w in term.split())
    if not words:
        raise ConfigError("empty concordance term")

    index = archive.word_index(side)
    occurrences = index.get(words[0], [])
    phrase_words: dict[tuple[str, int], list] = {}
    hits: list[ConcordanceHit] = []
    total = 0
    for doc_id, cid, word_idx in occurrences:
        doc = archive.document(doc_id)
        assert doc is not None
        key = (doc_id, cid)
        if key not in phrase_words:
            phrase_words[key] = [
                t for t in doc.phrase_tokens(cid) if t.klass is TokenClass.WORD
            ]
        tokens = phrase_words[key]
        if word_idx + len(words) > len(tokens):
            continue
        if tuple(t.normalized for t in tokens[word_idx : word_idx + len(words)]) != words:
            continue
        total += 1
        if len(hits) >= limit:
            continue
        matched = tokens[word_idx : word_idx + len(words)]
        phrase = doc.tree.get(cid)
        sentence = doc.tree.get(phrase.parent) if phrase.parent is not None else phrase
        hits.append(
            ConcordanceHit(
                doc_id=doc_id,
                phrase=phrase,
                highlight=(matched[0].start, matched[-1].end),
                sentence_span=(sentence.start, sentence.end),
                sentence_text=doc.text[sentence.start : sentence.end],
                counterparts=_phrase_counterparts(archive, doc_id, cid, side),
            )
        )
    return ConcordanceResult(term=words, side=side, total=total, hits=tuple(hits))


def _phrase_counterparts(
    archive: Archive, doc_id: str, cid: int, side: str
) -> tuple[CounterpartRef, ...]:
    for bitext in archive.bitexts:
        if bitext.document(side).doc_id != doc_id:
            continue
        link = bitext.link_of(Level.PHRASE, cid, side)
        if link is None:
            continue
        other_doc = bitext.target if side == SOURCE else bitext.source
        other_cids = link.tgt if side == SOURCE else link.src
        if not other_cids:
            continue
        return tuple(
            CounterpartRef(
                doc_id=other_doc.doc_id,
                start=other_doc.tree.get(c).start,
                end=other_doc.tree.get(c).end,
                text=other_doc.text[other_doc.tree.get(c).start : other_doc.tree.get(c).end],
            )
            for c in other_cids
        )
    return ()


@dataclass(frozen=True)
class CounterwordAnswer:
    word: str
    side: str
    found: bool
    entries: tuple[CounterwordEntry, ...]
    evaluation: SelfEvaluation


def counterwords_query(
    archive: Archive,
    word: str,
    side: str = SOURCE,
    normalizer: Optional[Normalizer] = None,
) -> CounterwordAnswer:
    """Presented counterword candidates plus the confidence report.

    Works symmetrically from either side; a word absent from the corpus
    side comes back found=False, distinct from known-but-low-confidence.
    """
    if normalizer is None:
        normalizer = archive.config.normalizer
    normalized = normalizer(word)
    if archive.lexicon is None:
        empty = SelfEvaluation(normalized, side, False, 0, 0, None, ())
        return CounterwordAnswer(normalized, side, False, (), empty)
    evaluation = self_evaluation(archive.lexicon, normalized, side)
    entries = archive.lexicon.presented(normalized, side)
    return CounterwordAnswer(normalized, side, evaluation.found, entries, evaluation)
