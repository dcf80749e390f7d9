"""Corpus-level products: draft phrase lists, fork detection, corpus statistics."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ConfigError
from .model import SOURCE, TARGET, Bitext, Document, Level, TokenClass
from .segmenter import CASEFOLD_NORMALIZER, Normalizer

MAX_NGRAM_LEN = 4


@dataclass(frozen=True)
class PhraseListEntry:
    """One draft-list n-gram with its frequency, a sample context and an
    optional best-scoring counterpart n-gram."""

    ngram: tuple[str, ...]
    freq: int
    sample: tuple[str, int]  # (doc_id, phrase cid) of the first occurrence
    paired: Optional[tuple[tuple[str, ...], float]] = None


@dataclass(frozen=True)
class ForkBranch:
    counterpart: str
    score: float
    cooc: int


@dataclass(frozen=True)
class ForkReport:
    """One pivot translated into (or translating) two or more counterparts.

    Severity is the score ratio of the second-best to the best branch: 1.0
    means a perfectly ambiguous fork.
    """

    pivot: str
    side: str
    branches: tuple[ForkBranch, ...]
    severity: float


@dataclass(frozen=True)
class CorpusStats:
    """Frequency profile of one corpus side over normalized word tokens.

    Type ratios divide by the type count, token ratios by the token count;
    both views of hapax/below-5 sparsity are reported.
    """

    token_count: int
    type_count: int
    hapax_type_ratio: float
    below5_type_ratio: float
    hapax_token_ratio: float
    below5_token_ratio: float
    frequencies: Mapping[str, int]


def _phrase_words(doc: Document, cid: int, normalizer: Normalizer) -> list[str]:
    return [
        normalizer(t.surface)
        for t in doc.phrase_tokens(cid)
        if t.klass is TokenClass.WORD
    ]


def _side_documents(bitexts: Sequence[Bitext], side: str) -> list[Document]:
    seen: dict[str, Document] = {}
    for bitext in sorted(bitexts, key=lambda b: b.bitext_id):
        doc = bitext.document(side)
        seen.setdefault(doc.doc_id, doc)
    return [seen[doc_id] for doc_id in sorted(seen)]


def corpus_stats(
    documents: Iterable[Document], normalizer: Normalizer = CASEFOLD_NORMALIZER
) -> CorpusStats:
    """Exact counts over normalized word tokens; ratios are 0 on empty input."""
    freq: Counter = Counter()
    for doc in documents:
        for tokens in doc.tokens.values():
            for token in tokens:
                if token.klass is TokenClass.WORD:
                    freq[normalizer(token.surface)] += 1
    token_count = sum(freq.values())
    type_count = len(freq)
    hapax_types = sum(1 for c in freq.values() if c == 1)
    below5_types = sum(1 for c in freq.values() if c < 5)
    below5_tokens = sum(c for c in freq.values() if c < 5)
    return CorpusStats(
        token_count=token_count,
        type_count=type_count,
        hapax_type_ratio=hapax_types / type_count if type_count else 0.0,
        below5_type_ratio=below5_types / type_count if type_count else 0.0,
        hapax_token_ratio=hapax_types / token_count if token_count else 0.0,
        below5_token_ratio=below5_tokens / token_count if token_count else 0.0,
        frequencies=dict(sorted(freq.items())),
    )


def _ngrams(words: Sequence[str], max_len: int) -> Iterable[tuple[str, ...]]:
    for n in range(1, max_len + 1):
        for i in range(len(words) - n + 1):
            yield tuple(words[i : i + n])


def extract_phrases(
    bitexts: Sequence[Bitext],
    side: str = SOURCE,
    normalizer: Normalizer = CASEFOLD_NORMALIZER,
    min_freq: int = 2,
    max_len: int = MAX_NGRAM_LEN,
    lexicon=None,
) -> tuple[PhraseListEntry, ...]:
    """Draft phrase list: within-phrase word n-grams with freq >= min_freq.

    When a counterword lexicon is supplied, each n-gram is paired with the
    best counterpart n-gram observed in linked phrases; the pairing score
    is the mean association score over all member-word pairs.
    """
    if min_freq < 2:
        raise ConfigError(f"min_freq must be >= 2, got {min_freq}")
    if not 1 <= max_len <= MAX_NGRAM_LEN:
        raise ConfigError(f"max_len must lie in 1..{MAX_NGRAM_LEN}, got {max_len}")

    documents = _side_documents(bitexts, side)
    counts: Counter = Counter()
    occurrences: dict[tuple[str, ...], list[tuple[str, int]]] = {}
    for doc in documents:
        for phrase in doc.tree.at_level(Level.PHRASE):
            words = _phrase_words(doc, phrase.cid, normalizer)
            for gram in _ngrams(words, max_len):
                counts[gram] += 1
                occurrences.setdefault(gram, []).append((doc.doc_id, phrase.cid))

    score_of: dict[tuple[str, str], float] = {}
    if lexicon is not None:
        for e in lexicon.entries:
            key = (e.source_type, e.target_type) if side == SOURCE else (e.target_type, e.source_type)
            score_of[key] = e.score

    links_by_phrase: dict[tuple[str, int], list[tuple[Bitext, object]]] = {}
    if lexicon is not None:
        for bitext in sorted(bitexts, key=lambda b: b.bitext_id):
            doc = bitext.document(side)
            for link in bitext.links_at(Level.PHRASE):
                members = link.src if side == SOURCE else link.tgt
                opposite = link.tgt if side == SOURCE else link.src
                if not members or not opposite:
                    continue
                for cid in members:
                    links_by_phrase.setdefault((doc.doc_id, cid), []).append((bitext, link))

    entries = []
    for gram in sorted(counts, key=lambda g: (-counts[g], g)):
        if counts[gram] < min_freq:
            continue
        paired = None
        if lexicon is not None:
            paired = _best_counterpart(
                gram, occurrences[gram], links_by_phrase, side, normalizer, max_len, score_of
            )
        entries.append(
            PhraseListEntry(
                ngram=gram,
                freq=counts[gram],
                sample=occurrences[gram][0],
                paired=paired,
            )
        )
    return tuple(entries)


def _best_counterpart(
    gram: tuple[str, ...],
    spots: list[tuple[str, int]],
    links_by_phrase: dict,
    side: str,
    normalizer: Normalizer,
    max_len: int,
    score_of: Mapping[tuple[str, str], float],
) -> Optional[tuple[tuple[str, ...], float]]:
    candidates: set[tuple[str, ...]] = set()
    for spot in spots:
        for bitext, link in links_by_phrase.get(spot, ()):
            opposite_doc = bitext.target if side == SOURCE else bitext.source
            opposite_cids = link.tgt if side == SOURCE else link.src
            for cid in opposite_cids:
                words = _phrase_words(opposite_doc, cid, normalizer)
                candidates.update(_ngrams(words, max_len))
    best: Optional[tuple[tuple[str, ...], float]] = None
    for cand in sorted(candidates):
        pairs = [(s, t) for s in gram for t in cand]
        score = sum(score_of.get(p, 0.0) for p in pairs) / len(pairs)
        if score > 0 and (best is None or score > best[1]):
            best = (cand, score)
    return best


def detect_forks(lexicon, fork_threshold: Optional[float] = None) -> tuple[ForkReport, ...]:
    """Report every pivot, on either side, with two or more counterparts at
    or above the threshold; sorted by descending severity."""
    threshold = lexicon.threshold if fork_threshold is None else fork_threshold
    if not 0.0 <= threshold <= 1.0:
        raise ConfigError(f"fork threshold must lie in [0, 1], got {threshold}")
    reports: list[ForkReport] = []
    for side in (SOURCE, TARGET):
        groups: dict[str, list[ForkBranch]] = {}
        for e in lexicon.entries:
            if e.score < threshold:
                continue
            pivot = e.source_type if side == SOURCE else e.target_type
            other = e.target_type if side == SOURCE else e.source_type
            groups.setdefault(pivot, []).append(ForkBranch(other, e.score, e.cooc))
        for pivot in sorted(groups):
            branches = sorted(groups[pivot], key=lambda b: (-b.score, b.counterpart))
            if len(branches) < 2:
                continue
            best = branches[0].score
            severity = branches[1].score / best if best > 0 else 1.0
            reports.append(ForkReport(pivot, side, tuple(branches), severity))
    reports.sort(key=lambda r: (-r.severity, r.side, r.pivot))
    return tuple(reports)


def phrase_entry_fields(e: PhraseListEntry) -> tuple[str, ...]:
    """The canonical tab-separated field encoding of one phrase-list entry."""
    paired_gram = " ".join(e.paired[0]) if e.paired else ""
    paired_score = repr(e.paired[1]) if e.paired else ""
    return (" ".join(e.ngram), str(e.freq), e.sample[0], str(e.sample[1]), paired_gram, paired_score)


def fork_report_fields(r: ForkReport) -> tuple[str, ...]:
    """The canonical tab-separated field encoding of one fork report."""
    branches = ",".join(f"{b.counterpart}:{b.score!r}:{b.cooc}" for b in r.branches)
    return (r.side, r.pivot, repr(r.severity), branches)
