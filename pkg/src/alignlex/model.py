"""Core data model: documents, constituent trees, tokens, bitexts and links.

Spans are half-open ``[start, end)`` intervals of Unicode scalar positions
into the raw document text. All types are immutable after construction and
safe for unrestricted concurrent reads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from .errors import BeadShapeError, OwnershipError, SpanRangeError

SOURCE = "source"
TARGET = "target"
SIDES = (SOURCE, TARGET)


class Level(enum.IntEnum):
    """Constituent levels, ordered from the whole document down to phrases."""

    DOCUMENT = 0
    PARAGRAPH = 1
    SENTENCE = 2
    PHRASE = 3

    @property
    def tag(self) -> str:
        return self.name.lower()

    @staticmethod
    def from_tag(tag: str) -> "Level":
        return Level[tag.upper()]


class TokenClass(enum.Enum):
    WORD = "word"
    NUMERAL = "numeral"
    PUNCT = "punct"


@dataclass(frozen=True)
class Token:
    """One tokenized unit of a phrase.

    ``start`` is the absolute character offset of ``surface`` in the
    document text; ``index`` is the token's 0-based position within its
    phrase. ``normalized`` starts out equal to ``surface`` and is rewritten
    by a normalizer.
    """

    surface: str
    normalized: str
    index: int
    klass: TokenClass
    start: int

    @property
    def end(self) -> int:
        return self.start + len(self.surface)


@dataclass(frozen=True)
class Constituent:
    """A node of the hierarchical segmentation of one document."""

    cid: int
    level: Level
    start: int
    end: int
    parent: Optional[int]
    children: tuple[int, ...] = ()

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def contains(self, start: int, end: int) -> bool:
        return self.start <= start and end <= self.end


@dataclass(frozen=True)
class ConstituentTree:
    """All constituents of one document, indexed by cid in preorder.

    ``nodes[i].cid == i`` always holds; ``nodes[0]`` is the document root.
    """

    nodes: tuple[Constituent, ...]

    @property
    def root(self) -> Constituent:
        return self.nodes[0]

    def get(self, cid: int) -> Constituent:
        return self.nodes[cid]

    def at_level(self, level: Level) -> tuple[Constituent, ...]:
        return tuple(c for c in self.nodes if c.level == level)

    def children_of(self, c: Constituent) -> tuple[Constituent, ...]:
        return tuple(self.nodes[i] for i in c.children)

    def depth(self, c: Constituent) -> int:
        d = 0
        while c.parent is not None:
            c = self.nodes[c.parent]
            d += 1
        return d

    def descendants(self, c: Constituent, level: Optional[Level] = None) -> Iterator[Constituent]:
        """Yield c's subtree in document order, optionally filtered by level."""
        stack = [c]
        while stack:
            node = stack.pop()
            if level is None or node.level == level:
                yield node
            stack.extend(reversed([self.nodes[i] for i in node.children]))


@dataclass(frozen=True)
class Document:
    """One half of a bitext: raw text plus its segmentation artifacts.

    ``tokens`` maps each phrase cid to that phrase's token tuple. It is
    populated at build time so alignment, assignment and queries never need
    the segmentation rules again.
    """

    doc_id: str
    language: str
    text: str
    tree: ConstituentTree
    tokens: Mapping[int, tuple[Token, ...]]

    def phrase_tokens(self, cid: int) -> tuple[Token, ...]:
        return self.tokens.get(cid, ())

    def constituent(self, cid: int) -> Constituent:
        return self.tree.get(cid)

    def owns(self, c: Constituent) -> bool:
        return 0 <= c.cid < len(self.tree.nodes) and self.tree.nodes[c.cid] == c


LEGAL_BEAD_SHAPES = ((1, 1), (1, 0), (0, 1), (2, 1), (1, 2), (2, 2))


@dataclass(frozen=True)
class Link:
    """One alignment bead pairing 0..2 constituents per side at one level.

    ``cost`` is the aligner's bead cost, kept for diagnostics only; it is
    excluded from equality.
    """

    level: Level
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    cost: float = field(default=0.0, compare=False)

    def __post_init__(self) -> None:
        shape = (len(self.src), len(self.tgt))
        if shape not in LEGAL_BEAD_SHAPES:
            raise BeadShapeError(f"illegal bead shape {shape}")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.src), len(self.tgt))


def _normalize_links(links: Mapping[Level, Sequence[Link]]) -> dict[Level, tuple[Link, ...]]:
    out: dict[Level, tuple[Link, ...]] = {}
    for level in Level:
        found = tuple(links.get(level, ()))
        if found:
            out[level] = found
    return out


@dataclass(frozen=True)
class Bitext:
    """A coupled pair of documents with per-level alignment links."""

    bitext_id: str
    source: Document
    target: Document
    links: Mapping[Level, tuple[Link, ...]]
    degraded: frozenset[Level] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "links", _normalize_links(self.links))
        object.__setattr__(self, "degraded", frozenset(self.degraded))

    def links_at(self, level: Level) -> tuple[Link, ...]:
        return self.links.get(level, ())

    def document(self, side: str) -> Document:
        return self.source if side == SOURCE else self.target

    def side_of(self, c: Constituent) -> Optional[str]:
        if self.source.owns(c):
            return SOURCE
        if self.target.owns(c):
            return TARGET
        return None

    def link_of(self, level: Level, cid: int, side: str) -> Optional[Link]:
        for link in self.links_at(level):
            members = link.src if side == SOURCE else link.tgt
            if cid in members:
                return link
        return None

    def total_cost(self) -> float:
        return sum(link.cost for links in self.links.values() for link in links)


def smallest_enclosing(doc: Document, start: int, end: int) -> Constituent:
    """Deepest constituent whose span contains ``[start, end)``.

    Spans that fall entirely in delimiter gaps resolve to the nearest
    enclosing ancestor, ultimately the document root.
    """
    if not (0 <= start <= end <= len(doc.text)):
        raise SpanRangeError(
            f"span [{start}, {end}) outside document of length {len(doc.text)}"
        )
    node = doc.tree.root
    while True:
        for child in doc.tree.children_of(node):
            if child.contains(start, end):
                node = child
                break
        else:
            return node


def context_ladder(doc: Document, c: Constituent) -> tuple[Constituent, ...]:
    """The chain ``[c, parent(c), ..., root]`` of successively larger contexts."""
    if not doc.owns(c):
        raise OwnershipError(f"constituent {c.cid} does not belong to document {doc.doc_id!r}")
    rungs = [c]
    while rungs[-1].parent is not None:
        rungs.append(doc.tree.get(rungs[-1].parent))
    return tuple(rungs)


def counterpart(
    bitext: Bitext, c: Constituent, side: Optional[str] = None
) -> Optional[tuple[tuple[Constituent, ...], Link]]:
    """Opposite-side constituents of the link containing ``c`` at its level.

    Returns None when ``c`` is unlinked or sits in an indel (1:0 / 0:1)
    bead. ``side`` disambiguates when both documents are identical.
    """
    if side is None:
        side = bitext.side_of(c)
        if side is None:
            raise OwnershipError(f"constituent {c.cid} belongs to neither side")
    elif not bitext.document(side).owns(c):
        raise OwnershipError(f"constituent {c.cid} does not belong to the {side} side")
    link = bitext.link_of(c.level, c.cid, side)
    if link is None:
        return None
    other_doc = bitext.target if side == SOURCE else bitext.source
    other_cids = link.tgt if side == SOURCE else link.src
    if not other_cids:
        return None
    return tuple(other_doc.tree.get(i) for i in other_cids), link


def validate_tree(text: str, tree: ConstituentTree) -> None:
    """Raise ValueError when a tree violates a structural invariant."""
    if not tree.nodes:
        raise ValueError("tree has no nodes")
    root = tree.root
    if root.level != Level.DOCUMENT or root.parent is not None:
        raise ValueError("node 0 must be the document root")
    if (root.start, root.end) != (0, len(text)):
        raise ValueError("root span must cover the whole text")
    for i, node in enumerate(tree.nodes):
        if node.cid != i:
            raise ValueError(f"node at position {i} carries cid {node.cid}")
        if not (0 <= node.start <= node.end <= len(text)):
            raise ValueError(f"constituent {i} span out of bounds")
        if node.start == node.end and node.level != Level.DOCUMENT:
            raise ValueError(f"constituent {i} is empty")
        if node.level == Level.PHRASE and node.children:
            raise ValueError(f"phrase {i} has children")
        prev_end = node.start
        for child_id in node.children:
            child = tree.get(child_id)
            if child.parent != node.cid:
                raise ValueError(f"child {child_id} does not point back to {node.cid}")
            if child.level <= node.level:
                raise ValueError(f"child {child_id} level does not decrease")
            if child.start < prev_end or child.end > node.end:
                raise ValueError(f"child {child_id} span escapes its parent or overlaps a sibling")
            prev_end = child.end


def validate_bitext(bitext: Bitext) -> None:
    """Raise ValueError when links violate the bitext invariants."""
    for level, links in bitext.links.items():
        seen_src: set[int] = set()
        seen_tgt: set[int] = set()
        flat_src: list[int] = []
        flat_tgt: list[int] = []
        for link in links:
            if link.level != level:
                raise ValueError(f"link {link} filed under level {level.tag}")
            for cid in link.src:
                c = _checked(bitext.source, cid, level)
                if cid in seen_src:
                    raise ValueError(f"source constituent {cid} linked twice at {level.tag}")
                seen_src.add(cid)
                flat_src.append(c.start)
            for cid in link.tgt:
                c = _checked(bitext.target, cid, level)
                if cid in seen_tgt:
                    raise ValueError(f"target constituent {cid} linked twice at {level.tag}")
                seen_tgt.add(cid)
                flat_tgt.append(c.start)
        if flat_src != sorted(flat_src) or flat_tgt != sorted(flat_tgt):
            raise ValueError(f"links at {level.tag} cross")


def _checked(doc: Document, cid: int, level: Level) -> Constituent:
    if not (0 <= cid < len(doc.tree.nodes)):
        raise ValueError(f"unknown constituent {cid} in document {doc.doc_id!r}")
    c = doc.tree.get(cid)
    if c.level != level:
        raise ValueError(f"constituent {cid} has level {c.level.tag}, link says {level.tag}")
    return c
