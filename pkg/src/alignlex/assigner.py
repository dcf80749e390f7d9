"""Statistical word-level counterpart assignment inside aligned phrase pairs.

Candidate pairs arise only within phrase-level links. Each pair gets a
weighted association score from agreement of within-phrase position,
relative frequency (damped by co-occurrence reliability) and word length;
pairs above a cut-off threshold form the presented set. Low maximum
scores make the procedure self-evaluating.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ConfigError, NotACandidateError
from .model import SOURCE, TARGET, Bitext, Document, Level, TokenClass
from .segmenter import CASEFOLD_NORMALIZER, Normalizer

EVIDENCE_CAP = 10
SPARSE_FREQUENCY = 5

LOW_CONFIDENCE = "LOW_CONFIDENCE"
SPARSE = "SPARSE"


@dataclass(frozen=True)
class AssociationWeights:
    """Non-negative weights of the three agreement measures, normalized to sum 1.

    Setting a weight to zero disables its term; the remaining weights are
    renormalized.
    """

    w_pos: float = 0.4
    w_freq: float = 0.4
    w_len: float = 0.2

    def __post_init__(self) -> None:
        if min(self.w_pos, self.w_freq, self.w_len) < 0:
            raise ConfigError("association weights must be non-negative")
        total = self.w_pos + self.w_freq + self.w_len
        if total <= 0:
            raise ConfigError("at least one association weight must be positive")
        object.__setattr__(self, "w_pos", self.w_pos / total)
        object.__setattr__(self, "w_freq", self.w_freq / total)
        object.__setattr__(self, "w_len", self.w_len / total)


DEFAULT_WEIGHTS = AssociationWeights()


@dataclass
class CooccurrenceTable:
    """Corpus counts backing association scores.

    ``cooc`` counts linked phrase pairs containing both types; ``positions``
    collects (source, target) relative-position samples over those
    co-occurrences; ``source_freq``/``target_freq`` count word-token
    occurrences per side over the whole corpus.
    """

    cooc: dict[tuple[str, str], int]
    positions: dict[tuple[str, str], list[tuple[float, float]]]
    evidence: dict[tuple[str, str], list[tuple[str, int]]]
    source_freq: Counter
    target_freq: Counter
    source_tokens: int
    target_tokens: int
    linked_phrase_pairs: int

    @property
    def empty(self) -> bool:
        return self.linked_phrase_pairs == 0


def _word_occurrences(doc: Document, cids: Sequence[int], normalizer: Normalizer):
    """(type, relative position) pairs for the word tokens of the given phrases."""
    out: list[tuple[str, float]] = []
    for cid in cids:
        words = [t for t in doc.phrase_tokens(cid) if t.klass is TokenClass.WORD]
        denom = len(words) - 1
        for i, token in enumerate(words):
            rel = i / denom if denom > 0 else 0.5
            out.append((normalizer(token.surface), rel))
    return out


def _unique_documents(bitexts: Iterable[Bitext], side: str) -> list[Document]:
    seen: dict[str, Document] = {}
    for bitext in bitexts:
        doc = bitext.document(side)
        seen.setdefault(doc.doc_id, doc)
    return list(seen.values())


def collect(bitexts: Sequence[Bitext], normalizer: Normalizer = CASEFOLD_NORMALIZER) -> CooccurrenceTable:
    """Build the co-occurrence table over normalized word types.

    Punctuation and numerals never become counterword candidates; numerals
    are treated as self-translating alignment anchors instead.
    """
    cooc: dict[tuple[str, str], int] = {}
    positions: dict[tuple[str, str], list[tuple[float, float]]] = {}
    evidence: dict[tuple[str, str], list[tuple[str, int]]] = {}
    source_freq: Counter = Counter()
    target_freq: Counter = Counter()
    source_tokens = 0
    target_tokens = 0
    linked = 0

    for side, freq in ((SOURCE, source_freq), (TARGET, target_freq)):
        for doc in _unique_documents(bitexts, side):
            for tokens in doc.tokens.values():
                for token in tokens:
                    if token.klass is TokenClass.WORD:
                        freq[normalizer(token.surface)] += 1
    source_tokens = sum(source_freq.values())
    target_tokens = sum(target_freq.values())

    for bitext in bitexts:
        for ordinal, link in enumerate(bitext.links_at(Level.PHRASE)):
            if not link.src or not link.tgt:
                continue
            linked += 1
            src_occ = _word_occurrences(bitext.source, link.src, normalizer)
            tgt_occ = _word_occurrences(bitext.target, link.tgt, normalizer)
            if not src_occ or not tgt_occ:
                continue
            pair_set = {(s, t) for s, _ in src_occ for t, _ in tgt_occ}
            for pair in sorted(pair_set):
                cooc[pair] = cooc.get(pair, 0) + 1
                held = evidence.setdefault(pair, [])
                if len(held) < EVIDENCE_CAP:
                    held.append((bitext.bitext_id, ordinal))
            for s, ps in src_occ:
                for t, pt in tgt_occ:
                    positions.setdefault((s, t), []).append((ps, pt))

    return CooccurrenceTable(
        cooc=cooc,
        positions=positions,
        evidence=evidence,
        source_freq=source_freq,
        target_freq=target_freq,
        source_tokens=source_tokens,
        target_tokens=target_tokens,
        linked_phrase_pairs=linked,
    )


@dataclass(frozen=True)
class AssociationScore:
    score: float
    pos: float
    freq: float
    len: float


def association(
    s: str,
    t: str,
    table: CooccurrenceTable,
    weights: AssociationWeights = DEFAULT_WEIGHTS,
) -> AssociationScore:
    """Weighted agreement score of one candidate pair; components in [0, 1].

    The frequency measure multiplies relative-frequency agreement by the
    reliability factor cooc / sqrt(f(s) * f(t)), damping frequent but
    unrelated pairs.
    """
    count = table.cooc.get((s, t), 0)
    if count < 1:
        raise NotACandidateError(f"{s!r} and {t!r} never co-occur in a linked phrase pair")
    samples = table.positions[(s, t)]
    pos = 1.0 - sum(abs(ps - pt) for ps, pt in samples) / len(samples)
    rf_s = table.source_freq[s] / table.source_tokens
    rf_t = table.target_freq[t] / table.target_tokens
    agreement = min(rf_s, rf_t) / max(rf_s, rf_t)
    reliability = count / math.sqrt(table.source_freq[s] * table.target_freq[t])
    freq = agreement * reliability
    length = 1.0 - abs(len(s) - len(t)) / max(len(s), len(t))
    score = weights.w_pos * pos + weights.w_freq * freq + weights.w_len * length
    return AssociationScore(score=score, pos=pos, freq=freq, len=length)


@dataclass(frozen=True)
class CounterwordEntry:
    """One scored source/target type pair with its evidence references."""

    source_type: str
    target_type: str
    score: float
    pos: float
    freq: float
    len: float
    cooc: int
    evidence: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class CounterwordLexicon:
    """All candidate pairs with scores; entries at or above ``threshold`` are presented.

    Per-side frequency tables ride along so self-evaluation can report
    corpus frequencies and sparsity after the table itself is gone.
    """

    entries: tuple[CounterwordEntry, ...]
    threshold: float
    source_freq: Mapping[str, int]
    target_freq: Mapping[str, int]
    source_tokens: int
    target_tokens: int

    def presented_entries(self, threshold: Optional[float] = None) -> tuple[CounterwordEntry, ...]:
        cut = self.threshold if threshold is None else threshold
        return tuple(e for e in self.entries if e.score >= cut)

    def presented(self, word: str, side: str = SOURCE) -> tuple[CounterwordEntry, ...]:
        return tuple(e for e in self.entries_for(word, side) if e.score >= self.threshold)

    def entries_for(self, word: str, side: str = SOURCE) -> tuple[CounterwordEntry, ...]:
        if side == SOURCE:
            found = [e for e in self.entries if e.source_type == word]
        else:
            found = [e for e in self.entries if e.target_type == word]
        found.sort(key=lambda e: (-e.score, e.source_type, e.target_type))
        return tuple(found)

    def frequency(self, word: str, side: str = SOURCE) -> int:
        table = self.source_freq if side == SOURCE else self.target_freq
        return table.get(word, 0)

    @cached_property
    def max_scores(self) -> Mapping[str, float]:
        """Best score per source type, the self-evaluation signal."""
        best: dict[str, float] = {}
        for e in self.entries:
            if e.score > best.get(e.source_type, -1.0):
                best[e.source_type] = e.score
        return best


def assign(
    bitexts: Sequence[Bitext],
    normalizer: Normalizer = CASEFOLD_NORMALIZER,
    weights: AssociationWeights = DEFAULT_WEIGHTS,
    threshold: float = 0.5,
) -> CounterwordLexicon:
    """Score every candidate pair of the corpus into a counterword lexicon."""
    if not 0.0 <= threshold <= 1.0:
        raise ConfigError(f"threshold must lie in [0, 1], got {threshold}")
    table = collect(bitexts, normalizer)
    entries = []
    for s, t in sorted(table.cooc):
        assoc = association(s, t, table, weights)
        entries.append(
            CounterwordEntry(
                source_type=s,
                target_type=t,
                score=assoc.score,
                pos=assoc.pos,
                freq=assoc.freq,
                len=assoc.len,
                cooc=table.cooc[(s, t)],
                evidence=tuple(table.evidence[(s, t)]),
            )
        )
    entries.sort(key=lambda e: (e.source_type, -e.score, e.target_type))
    return CounterwordLexicon(
        entries=tuple(entries),
        threshold=threshold,
        source_freq=dict(table.source_freq),
        target_freq=dict(table.target_freq),
        source_tokens=table.source_tokens,
        target_tokens=table.target_tokens,
    )


@dataclass(frozen=True)
class SelfEvaluation:
    """Confidence report for one word: max score, candidate count, flags."""

    word: str
    side: str
    found: bool
    frequency: int
    candidates: int
    max_score: Optional[float]
    flags: tuple[str, ...]


def self_evaluation(lexicon: CounterwordLexicon, word: str, side: str = SOURCE) -> SelfEvaluation:
    """Report assignment confidence for a word; unknown words are flagged found=False."""
    entries = lexicon.entries_for(word, side)
    frequency = lexicon.frequency(word, side)
    if frequency == 0 and not entries:
        return SelfEvaluation(word, side, False, 0, 0, None, ())
    max_score = entries[0].score if entries else None
    flags = []
    if max_score is None or max_score < lexicon.threshold:
        flags.append(LOW_CONFIDENCE)
    if frequency < SPARSE_FREQUENCY:
        flags.append(SPARSE)
    return SelfEvaluation(word, side, True, frequency, len(entries), max_score, tuple(flags))


def export_lexicon_tsv(lexicon: CounterwordLexicon) -> str:
    """Deterministic tab-separated dump, sorted by (source_type, -score)."""
    lines = []
    for e in lexicon.entries:
        lines.append(
            "\t".join(
                (
                    e.source_type,
                    e.target_type,
                    repr(e.score),
                    repr(e.pos),
                    repr(e.freq),
                    repr(e.len),
                    str(e.cooc),
                )
            )
        )
    return "".join(line + "\n" for line in lines)
