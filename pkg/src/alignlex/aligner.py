"""Order-preserving alignment of constituent sequences via banded DP over beads.

Each level is aligned with a monotone bead sequence (1:1, 1:0, 0:1, 2:1,
1:2, 2:2) minimizing a cost built from anchor signatures: punctuation
marks, numeral strings and word counts. Lower levels are aligned inside
the beads of the level above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import BeadShapeError, LevelError
from .model import (
    LEGAL_BEAD_SHAPES,
    Bitext,
    Constituent,
    Document,
    Level,
    Link,
    TokenClass,
)

# Preference order between equal-cost DP predecessors, most preferred first.
_BEAD_PREFERENCE = ((1, 1), (2, 1), (1, 2), (2, 2), (1, 0), (0, 1))

_DEFAULT_PENALTIES = {
    (1, 1): 0.0,
    (1, 0): 3.0,
    (0, 1): 3.0,
    (2, 1): 1.5,
    (1, 2): 1.5,
    (2, 2): 2.5,
}


@dataclass(frozen=True)
class AnchorSignature:
    """Alignment evidence of one constituent: punctuation, numerals, word count."""

    punct: tuple[str, ...]
    numerals: tuple[str, ...]
    word_count: int


@dataclass(frozen=True)
class CostModel:
    """Weights and bead penalties of the alignment cost."""

    w_num: float = 1.0
    w_punct: float = 0.5
    w_len: float = 1.0
    bead_penalty: tuple[tuple[tuple[int, int], float], ...] = tuple(
        sorted(_DEFAULT_PENALTIES.items())
    )

    def __post_init__(self) -> None:
        if min(self.w_num, self.w_punct, self.w_len) < 0:
            raise ValueError("cost weights must be non-negative")
        penalties = dict(self.bead_penalty)
        if set(penalties) != set(LEGAL_BEAD_SHAPES):
            raise ValueError("bead penalties must cover exactly the six legal shapes")
        if any(p < 0 for p in penalties.values()):
            raise ValueError("bead penalties must be non-negative")
        if any(penalties[(1, 1)] > p for p in penalties.values()):
            raise ValueError("the (1,1) bead must be the cheapest")
        object.__setattr__(self, "bead_penalty", tuple(sorted(penalties.items())))

    def penalty(self, shape: tuple[int, int]) -> float:
        return dict(self.bead_penalty)[shape]


DEFAULT_COST_MODEL = CostModel()


@dataclass(frozen=True)
class Band:
    """Diagonal search-band geometry for the DP.

    The DP only visits cells within ``effective_slack`` of the scaled
    diagonal j = i*n/m; with ``proportional`` the slack grows with input
    size as max(slack, ceil(0.1 * max(m, n))).
    """

    slack: int = 20
    proportional: bool = True

    def __post_init__(self) -> None:
        if self.slack < 1:
            raise ValueError("band slack must be >= 1")

    def effective_slack(self, m: int, n: int) -> int:
        if self.proportional:
            return max(self.slack, math.ceil(0.1 * max(m, n)))
        return self.slack


DEFAULT_BAND = Band()


def signature(doc: Document, c: Constituent) -> AnchorSignature:
    """Aggregate anchor evidence over everything inside c's span.

    Word and numeral evidence comes from phrase tokens; punctuation also
    includes delimiter characters living in the gaps between phrases
    (commas, parentheses, colons), ordered by text position.
    """
    phrases = sorted(doc.tree.descendants(c, Level.PHRASE), key=lambda p: p.start)
    marks: list[tuple[int, str]] = []
    numerals: list[tuple[int, str]] = []
    word_count = 0
    for phrase in phrases:
        for token in doc.phrase_tokens(phrase.cid):
            if token.klass is TokenClass.WORD:
                word_count += 1
            elif token.klass is TokenClass.NUMERAL:
                numerals.append((token.start, token.normalized))
            else:
                marks.append((token.start, token.surface))
    # Gap material between phrase spans: by construction only delimiters
    # and whitespace; every non-space character counts as punctuation.
    pos = c.start
    for phrase in phrases:
        _collect_gap_punct(doc.text, pos, phrase.start, marks)
        pos = max(pos, phrase.end)
    _collect_gap_punct(doc.text, pos, c.end, marks)
    marks.sort()
    return AnchorSignature(
        punct=tuple(ch for _, ch in marks),
        numerals=tuple(s for _, s in sorted(numerals)),
        word_count=word_count,
    )


def _collect_gap_punct(text: str, start: int, end: int, out: list[tuple[int, str]]) -> None:
    for i in range(start, end):
        if not text[i].isspace():
            out.append((i, text[i]))


def combine_signatures(sigs: Iterable[AnchorSignature]) -> AnchorSignature:
    punct: list[str] = []
    numerals: list[str] = []
    wc = 0
    for sig in sigs:
        punct.extend(sig.punct)
        numerals.extend(sig.numerals)
        wc += sig.word_count
    return AnchorSignature(tuple(punct), tuple(numerals), wc)


def _lcs_len(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, 1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def _edit_distance(a: Sequence[str], b: Sequence[str]) -> int:
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def bead_cost(
    src_sigs: Sequence[AnchorSignature],
    tgt_sigs: Sequence[AnchorSignature],
    model: CostModel = DEFAULT_COST_MODEL,
) -> float:
    """Substitution/indel cost of one bead in the string-correction reduction.

    Indel beads skip the numeral and punctuation terms and charge the bead
    penalty plus the length term of the present side.
    """
    shape = (len(src_sigs), len(tgt_sigs))
    if shape not in LEGAL_BEAD_SHAPES:
        raise BeadShapeError(f"illegal bead shape {shape}")
    penalty = model.penalty(shape)
    if 0 in shape:
        present = combine_signatures(src_sigs if src_sigs else tgt_sigs)
        return penalty + model.w_len * abs(math.log(present.word_count + 1))
    src = combine_signatures(src_sigs)
    tgt = combine_signatures(tgt_sigs)
    total_numerals = len(src.numerals) + len(tgt.numerals)
    if total_numerals:
        numeral_mismatch = 1.0 - 2.0 * _lcs_len(src.numerals, tgt.numerals) / total_numerals
    else:
        numeral_mismatch = 0.0
    longest = max(len(src.punct), len(tgt.punct))
    punct_distance = _edit_distance(src.punct, tgt.punct) / longest if longest else 0.0
    length_cost = abs(math.log((src.word_count + 1) / (tgt.word_count + 1)))
    return (
        penalty
        + model.w_num * numeral_mismatch
        + model.w_punct * punct_distance
        + model.w_len * length_cost
    )


@dataclass(frozen=True)
class LevelAlignment:
    """Result of aligning one level: links in order, total cost, band health."""

    links: tuple[Link, ...]
    total_cost: float
    degraded: bool = False


def _banded_dp(
    src_sigs: Sequence[AnchorSignature],
    tgt_sigs: Sequence[AnchorSignature],
    model: CostModel,
    slack: int,
) -> Optional[tuple[list[tuple[int, int]], list[float], float]]:
    """Minimum-cost bead sequence within the band, or None when infeasible."""
    m, n = len(src_sigs), len(tgt_sigs)
    inf = math.inf

    def j_window(i: int) -> tuple[int, int]:
        diag = i * n / m if m else 0.0
        return max(0, math.ceil(diag - slack)), min(n, math.floor(diag + slack))

    cost = [[inf] * (n + 1) for _ in range(m + 1)]
    choice: list[list[Optional[tuple[int, int]]]] = [[None] * (n + 1) for _ in range(m + 1)]
    step_cost = [[0.0] * (n + 1) for _ in range(m + 1)]
    cost[0][0] = 0.0
    for i in range(m + 1):
        lo, hi = j_window(i)
        for j in range(lo, hi + 1):
            if i == 0 and j == 0:
                continue
            best = inf
            best_shape: Optional[tuple[int, int]] = None
            best_step = 0.0
            for di, dj in _BEAD_PREFERENCE:
                pi, pj = i - di, j - dj
                if pi < 0 or pj < 0 or cost[pi][pj] == inf:
                    continue
                step = bead_cost(src_sigs[pi:i], tgt_sigs[pj:j], model)
                candidate = cost[pi][pj] + step
                if candidate < best:
                    best = candidate
                    best_shape = (di, dj)
                    best_step = step
            cost[i][j] = best
            choice[i][j] = best_shape
            step_cost[i][j] = best_step
    if cost[m][n] == inf:
        return None
    beads: list[tuple[int, int]] = []
    steps: list[float] = []
    i, j = m, n
    while (i, j) != (0, 0):
        shape = choice[i][j]
        assert shape is not None
        beads.append(shape)
        steps.append(step_cost[i][j])
        i, j = i - shape[0], j - shape[1]
    beads.reverse()
    steps.reverse()
    return beads, steps, cost[m][n]


def align_level(
    src: Sequence[Constituent],
    tgt: Sequence[Constituent],
    src_doc: Document,
    tgt_doc: Document,
    model: CostModel = DEFAULT_COST_MODEL,
    band: Band = DEFAULT_BAND,
) -> LevelAlignment:
    """Align two same-level constituent sequences with a monotone bead cover.

    When the configured band admits no full cover it widens until one
    exists and the result is flagged degraded.
    """
    level = _common_level(src, tgt)
    src_sigs = [signature(src_doc, c) for c in src]
    tgt_sigs = [signature(tgt_doc, c) for c in tgt]
    m, n = len(src), len(tgt)
    if m == 0 and n == 0:
        return LevelAlignment((), 0.0, False)
    slack = band.effective_slack(m, n)
    degraded = False
    result = _banded_dp(src_sigs, tgt_sigs, model, slack)
    while result is None:
        degraded = True
        slack = max(slack * 2, max(m, n))
        result = _banded_dp(src_sigs, tgt_sigs, model, slack)
    beads, steps, total = result
    links: list[Link] = []
    i = j = 0
    for (di, dj), step in zip(beads, steps):
        links.append(
            Link(
                level=level,
                src=tuple(c.cid for c in src[i : i + di]),
                tgt=tuple(c.cid for c in tgt[j : j + dj]),
                cost=step,
            )
        )
        i += di
        j += dj
    return LevelAlignment(tuple(links), total, degraded)


def _common_level(src: Sequence[Constituent], tgt: Sequence[Constituent]) -> Level:
    levels = {c.level for c in src} | {c.level for c in tgt}
    if len(levels) > 1:
        raise LevelError(f"mixed levels in one alignment: {sorted(l.tag for l in levels)}")
    if not levels:
        return Level.PHRASE
    return levels.pop()


def align_bitext(
    source: Document,
    target: Document,
    model: CostModel = DEFAULT_COST_MODEL,
    band: Band = DEFAULT_BAND,
    bitext_id: Optional[str] = None,
) -> Bitext:
    """Build a structured bitext by cascading alignment down the levels.

    Paragraphs are aligned over the whole documents, sentences inside each
    linked paragraph group, phrases inside each linked sentence group.
    Constituents under indel beads stay unlinked at lower levels.
    """
    links: dict[Level, list[Link]] = {level: [] for level in Level}
    degraded: set[Level] = set()

    root_cost = bead_cost([signature(source, source.tree.root)], [signature(target, target.tree.root)], model)
    links[Level.DOCUMENT].append(Link(Level.DOCUMENT, (0,), (0,), cost=root_cost))

    para_result = align_level(
        source.tree.children_of(source.tree.root),
        target.tree.children_of(target.tree.root),
        source,
        target,
        model,
        band,
    )
    links[Level.PARAGRAPH].extend(para_result.links)
    if para_result.degraded:
        degraded.add(Level.PARAGRAPH)

    for para_link in para_result.links:
        if not para_link.src or not para_link.tgt:
            continue
        src_sents = _children_in_order(source, para_link.src)
        tgt_sents = _children_in_order(target, para_link.tgt)
        sent_result = align_level(src_sents, tgt_sents, source, target, model, band)
        links[Level.SENTENCE].extend(sent_result.links)
        if sent_result.degraded:
            degraded.add(Level.SENTENCE)
        for sent_link in sent_result.links:
            if not sent_link.src or not sent_link.tgt:
                continue
            src_phrases = _children_in_order(source, sent_link.src)
            tgt_phrases = _children_in_order(target, sent_link.tgt)
            phrase_result = align_level(src_phrases, tgt_phrases, source, target, model, band)
            links[Level.PHRASE].extend(phrase_result.links)
            if phrase_result.degraded:
                degraded.add(Level.PHRASE)

    return Bitext(
        bitext_id=bitext_id or f"{source.doc_id}__{target.doc_id}",
        source=source,
        target=target,
        links={level: tuple(ls) for level, ls in links.items()},
        degraded=frozenset(degraded),
    )


def _children_in_order(doc: Document, cids: Sequence[int]) -> list[Constituent]:
    out: list[Constituent] = []
    for cid in cids:
        out.extend(doc.tree.children_of(doc.tree.get(cid)))
    return out
