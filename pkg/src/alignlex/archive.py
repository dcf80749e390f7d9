"""On-disk corpus archive: raw texts plus line-oriented tab-separated indexes.

An archive directory holds one raw-text file per document, TSV index
files (constituents, tokens, links, lexicon, reports), the configuration
snapshot and a manifest with the format version and per-file line counts.
Everything is sorted canonically and written UTF-8 with LF newlines, so
identical archives serialize to identical bytes. Writes go to a temporary
directory followed by an atomic rename.
"""

from __future__ import annotations

import os
import shutil
import tempfile
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .assigner import CounterwordEntry, CounterwordLexicon
from .config import Config, config_sha256, dump_config, parse_config
from .errors import (
    ArchiveIntegrityError,
    ArchiveTruncatedError,
    ArchiveVersionError,
)
from .lexica import (
    ForkBranch,
    ForkReport,
    PhraseListEntry,
    fork_report_fields,
    phrase_entry_fields,
)
from .model import (
    SIDES,
    SOURCE,
    TARGET,
    Bitext,
    Constituent,
    ConstituentTree,
    Document,
    Level,
    Link,
    Token,
    TokenClass,
    validate_bitext,
    validate_tree,
)

FORMAT_VERSION = "1"

_INDEX_FILES = (
    "documents.tsv",
    "constituents.tsv",
    "tokens.tsv",
    "bitexts.tsv",
    "links.tsv",
    "lexicon.tsv",
    "lexicon_evidence.tsv",
    "frequencies.tsv",
    "phrases.tsv",
    "forks.tsv",
)


def _escape(value: str) -> str:
    return (
        value.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n").replace("\r", "\\r")
    )


def _unescape(value: str) -> str:
    out = []
    i = 0
    while i < len(value):
        ch = value[i]
        if ch == "\\" and i + 1 < len(value):
            nxt = value[i + 1]
            out.append({"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


@dataclass
class Archive:
    """Immutable-after-load corpus snapshot served to the query engine."""

    config: Config
    documents: tuple[Document, ...] = ()
    bitexts: tuple[Bitext, ...] = ()
    lexicon: Optional[CounterwordLexicon] = None
    phrase_lists: Optional[Mapping[str, tuple[PhraseListEntry, ...]]] = None
    forks: Optional[tuple[ForkReport, ...]] = None
    format_version: str = FORMAT_VERSION
    _index: Optional[dict] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        self.documents = tuple(sorted(self.documents, key=lambda d: d.doc_id))
        self.bitexts = tuple(sorted(self.bitexts, key=lambda b: b.bitext_id))
        ids = [d.doc_id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate document ids in archive")
        bids = [b.bitext_id for b in self.bitexts]
        if len(set(bids)) != len(bids):
            raise ValueError("duplicate bitext ids in archive")

    def document(self, doc_id: str) -> Optional[Document]:
        for doc in self.documents:
            if doc.doc_id == doc_id:
                return doc
        return None

    def bitext(self, bitext_id: str) -> Optional[Bitext]:
        for bitext in self.bitexts:
            if bitext.bitext_id == bitext_id:
                return bitext
        return None

    def side_documents(self, side: str) -> tuple[Document, ...]:
        seen: dict[str, Document] = {}
        for bitext in self.bitexts:
            doc = bitext.document(side)
            seen.setdefault(doc.doc_id, doc)
        return tuple(seen[doc_id] for doc_id in sorted(seen))

    def word_index(self, side: str) -> Mapping[str, list[tuple[str, int, int]]]:
        """In-memory inverted index: normalized type -> (doc_id, phrase cid,
        index among the phrase's word tokens). Built lazily, never persisted."""
        if self._index is None:
            self._index = {}
        if side not in self._index:
            index: dict[str, list[tuple[str, int, int]]] = {}
            for doc in self.side_documents(side):
                for cid in sorted(doc.tokens):
                    word_idx = 0
                    for token in doc.tokens[cid]:
                        if token.klass is TokenClass.WORD:
                            index.setdefault(token.normalized, []).append(
                                (doc.doc_id, cid, word_idx)
                            )
                            word_idx += 1
            self._index[side] = index
        return self._index[side]


def _render_documents(archive: Archive) -> str:
    return "".join(
        f"{d.doc_id}\t{d.language}\t{len(d.text)}\n" for d in archive.documents
    )


def _render_constituents(archive: Archive) -> str:
    lines = []
    for doc in archive.documents:
        for node in doc.tree.nodes:
            parent = -1 if node.parent is None else node.parent
            lines.append(
                f"{doc.doc_id}\t{node.cid}\t{node.level.tag}\t{node.start}\t{node.end}\t{parent}\n"
            )
    return "".join(lines)


def _render_tokens(archive: Archive) -> str:
    lines = []
    for doc in archive.documents:
        for cid in sorted(doc.tokens):
            for token in doc.tokens[cid]:
                lines.append(
                    "\t".join(
                        (
                            doc.doc_id,
                            str(cid),
                            str(token.index),
                            token.klass.value,
                            str(token.start),
                            str(token.end),
                            _escape(token.normalized),
                        )
                    )
                    + "\n"
                )
    return "".join(lines)


def _render_bitexts(archive: Archive) -> str:
    lines = []
    for b in archive.bitexts:
        degraded = ",".join(sorted(level.tag for level in b.degraded))
        lines.append(f"{b.bitext_id}\t{b.source.doc_id}\t{b.target.doc_id}\t{degraded}\n")
    return "".join(lines)


def _render_links(archive: Archive) -> str:
    lines = []
    for b in archive.bitexts:
        for level in Level:
            for ordinal, link in enumerate(b.links_at(level)):
                src = ",".join(str(c) for c in link.src)
                tgt = ",".join(str(c) for c in link.tgt)
                lines.append(
                    f"{b.bitext_id}\t{level.tag}\t{ordinal}\t{src}\t{tgt}\t{link.cost!r}\n"
                )
    return "".join(lines)


def _render_lexicon(lexicon: Optional[CounterwordLexicon]) -> str:
    if lexicon is None:
        return ""
    from .assigner import export_lexicon_tsv

    return export_lexicon_tsv(lexicon)


def _render_evidence(lexicon: Optional[CounterwordLexicon]) -> str:
    if lexicon is None:
        return ""
    lines = []
    for e in lexicon.entries:
        for bitext_id, ordinal in e.evidence:
            lines.append(f"{e.source_type}\t{e.target_type}\t{bitext_id}\t{ordinal}\n")
    return "".join(lines)


def _render_frequencies(lexicon: Optional[CounterwordLexicon]) -> str:
    if lexicon is None:
        return ""
    lines = []
    for side, table in ((SOURCE, lexicon.source_freq), (TARGET, lexicon.target_freq)):
        for word in sorted(table):
            lines.append(f"{side}\t{word}\t{table[word]}\n")
    return "".join(lines)


def _render_phrases(archive: Archive) -> str:
    if archive.phrase_lists is None:
        return ""
    lines = []
    for side in SIDES:
        for e in archive.phrase_lists.get(side, ()):
            lines.append("\t".join((side,) + phrase_entry_fields(e)) + "\n")
    return "".join(lines)


def _render_forks(archive: Archive) -> str:
    if archive.forks is None:
        return ""
    return "".join("\t".join(fork_report_fields(r)) + "\n" for r in archive.forks)


def _render_all(archive: Archive) -> dict[str, str]:
    files: dict[str, str] = {}
    files["config.txt"] = dump_config(archive.config)
    for doc in archive.documents:
        files[f"docs/{doc.doc_id}.txt"] = doc.text
    files["documents.tsv"] = _render_documents(archive)
    files["constituents.tsv"] = _render_constituents(archive)
    files["tokens.tsv"] = _render_tokens(archive)
    files["bitexts.tsv"] = _render_bitexts(archive)
    files["links.tsv"] = _render_links(archive)
    files["lexicon.tsv"] = _render_lexicon(archive.lexicon)
    files["lexicon_evidence.tsv"] = _render_evidence(archive.lexicon)
    files["frequencies.tsv"] = _render_frequencies(archive.lexicon)
    files["phrases.tsv"] = _render_phrases(archive)
    files["forks.tsv"] = _render_forks(archive)

    manifest: dict[str, str] = {
        "format_version": archive.format_version,
        "config_sha256": config_sha256(archive.config),
        "newline_normalization": "crlf_to_lf",
        "has_lexicon": "true" if archive.lexicon is not None else "false",
        "has_phrases": "true" if archive.phrase_lists is not None else "false",
        "has_forks": "true" if archive.forks is not None else "false",
    }
    if archive.lexicon is not None:
        manifest["lexicon_threshold"] = repr(archive.lexicon.threshold)
    for name in _INDEX_FILES:
        manifest[f"lines.{name}"] = str(files[name].count("\n"))
    files["manifest.tsv"] = "".join(f"{k}\t{manifest[k]}\n" for k in sorted(manifest))
    return files


def save(archive: Archive, path: str) -> None:
    """Write the archive atomically; an existing archive at path is replaced."""
    files = _render_all(archive)
    parent = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(parent, exist_ok=True)
    tmp = tempfile.mkdtemp(prefix=".archive-", dir=parent)
    try:
        for rel, content in files.items():
            full = os.path.join(tmp, rel)
            os.makedirs(os.path.dirname(full), exist_ok=True)
            with open(full, "w", encoding="utf-8", newline="") as handle:
                handle.write(content)
        if os.path.isdir(path):
            shutil.rmtree(path)
        os.replace(tmp, path)
    except Exception:
        shutil.rmtree(tmp, ignore_errors=True)
        raise


class _Reader:
    """Line-oriented reader with record-naming errors and count checks."""

    def __init__(self, root: str, manifest: Mapping[str, str]):
        self.root = root
        self.manifest = manifest

    def text(self, rel: str) -> str:
        full = os.path.join(self.root, rel)
        if not os.path.exists(full):
            raise ArchiveTruncatedError(f"{rel}: file missing")
        with open(full, "r", encoding="utf-8", newline="") as handle:
            return handle.read()

    def rows(self, rel: str, n_fields: int) -> list[tuple[int, list[str]]]:
        content = self.text(rel)
        expected = self.manifest.get(f"lines.{rel}")
        lines = content.splitlines()
        if expected is not None and len(lines) != int(expected):
            raise ArchiveTruncatedError(
                f"{rel}: manifest announces {expected} records, found {len(lines)}"
            )
        rows = []
        for lineno, line in enumerate(lines, 1):
            fields = line.split("\t")
            if len(fields) != n_fields:
                raise ArchiveIntegrityError(
                    f"{rel}:{lineno}: expected {n_fields} fields, got {len(fields)}"
                )
            rows.append((lineno, fields))
        return rows


def _parse_int_field(rel: str, lineno: int, name: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ArchiveIntegrityError(f"{rel}:{lineno}: {name} is not an integer: {value!r}") from None


def _parse_float_field(rel: str, lineno: int, name: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ArchiveIntegrityError(f"{rel}:{lineno}: {name} is not a number: {value!r}") from None


def _parse_level(rel: str, lineno: int, value: str) -> Level:
    try:
        return Level.from_tag(value)
    except KeyError:
        raise ArchiveIntegrityError(f"{rel}:{lineno}: unknown level {value!r}") from None


def load(path: str) -> Archive:
    """Load and validate an archive directory.

    Raises ArchiveVersionError on format mismatch, ArchiveTruncatedError on
    missing records and ArchiveIntegrityError naming the offending record on
    anything malformed or dangling.
    """
    if not os.path.isdir(path):
        raise FileNotFoundError(f"archive directory {path!r} does not exist")
    manifest_path = os.path.join(path, "manifest.tsv")
    if not os.path.exists(manifest_path):
        raise ArchiveTruncatedError("manifest.tsv: file missing")
    manifest: dict[str, str] = {}
    with open(manifest_path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle.read().splitlines(), 1):
            fields = line.split("\t")
            if len(fields) != 2:
                raise ArchiveIntegrityError(f"manifest.tsv:{lineno}: expected 2 fields")
            manifest[fields[0]] = fields[1]
    version = manifest.get("format_version")
    if version != FORMAT_VERSION:
        raise ArchiveVersionError(
            f"archive format {version!r} is not supported (expected {FORMAT_VERSION!r})"
        )
    reader = _Reader(path, manifest)

    config = parse_config(reader.text("config.txt"))
    if config_sha256(config) != manifest.get("config_sha256"):
        raise ArchiveIntegrityError("config.txt: sha256 does not match the manifest")

    # Documents with their raw texts.
    doc_meta: dict[str, tuple[int, str]] = {}
    texts: dict[str, str] = {}
    for lineno, (doc_id, language, chars) in _named(reader.rows("documents.tsv", 3)):
        if doc_id in doc_meta:
            raise ArchiveIntegrityError(f"documents.tsv:{lineno}: duplicate document {doc_id!r}")
        n_chars = _parse_int_field("documents.tsv", lineno, "chars", chars)
        text = reader.text(f"docs/{doc_id}.txt")
        if len(text) != n_chars:
            raise ArchiveIntegrityError(
                f"documents.tsv:{lineno}: document {doc_id!r} has {len(text)} chars, index says {n_chars}"
            )
        doc_meta[doc_id] = (n_chars, language)
        texts[doc_id] = text

    # Constituents, grouped per document, children rebuilt from parents.
    raw_nodes: dict[str, dict[int, tuple[int, Level, int, int, Optional[int]]]] = {
        doc_id: {} for doc_id in doc_meta
    }
    for lineno, fields in reader.rows("constituents.tsv", 6):
        doc_id, cid_s, level_s, start_s, end_s, parent_s = fields
        if doc_id not in raw_nodes:
            raise ArchiveIntegrityError(f"constituents.tsv:{lineno}: unknown document {doc_id!r}")
        cid = _parse_int_field("constituents.tsv", lineno, "cid", cid_s)
        if cid in raw_nodes[doc_id]:
            raise ArchiveIntegrityError(f"constituents.tsv:{lineno}: duplicate cid {cid}")
        parent_i = _parse_int_field("constituents.tsv", lineno, "parent", parent_s)
        raw_nodes[doc_id][cid] = (
            lineno,
            _parse_level("constituents.tsv", lineno, level_s),
            _parse_int_field("constituents.tsv", lineno, "start", start_s),
            _parse_int_field("constituents.tsv", lineno, "end", end_s),
            None if parent_i < 0 else parent_i,
        )

    trees: dict[str, ConstituentTree] = {}
    for doc_id, nodes in raw_nodes.items():
        if not nodes:
            raise ArchiveIntegrityError(f"constituents.tsv: document {doc_id!r} has no root")
        children: dict[int, list[int]] = {cid: [] for cid in nodes}
        for cid in sorted(nodes):
            lineno, level, start, end, parent = nodes[cid]
            if parent is not None:
                if parent not in nodes:
                    raise ArchiveIntegrityError(
                        f"constituents.tsv:{lineno}: unknown parent {parent} of cid {cid}"
                    )
                children[parent].append(cid)
        built = []
        for cid in sorted(nodes):
            lineno, level, start, end, parent = nodes[cid]
            built.append(
                Constituent(cid, level, start, end, parent, tuple(children[cid]))
            )
        if [c.cid for c in built] != list(range(len(built))):
            raise ArchiveIntegrityError(
                f"constituents.tsv: cids of document {doc_id!r} are not dense"
            )
        tree = ConstituentTree(tuple(built))
        try:
            validate_tree(texts[doc_id], tree)
        except ValueError as exc:
            raise ArchiveIntegrityError(f"constituents.tsv: document {doc_id!r}: {exc}") from None
        trees[doc_id] = tree

    # Tokens per phrase.
    doc_tokens: dict[str, dict[int, list[Token]]] = {doc_id: {} for doc_id in doc_meta}
    for lineno, fields in reader.rows("tokens.tsv", 7):
        doc_id, cid_s, index_s, klass_s, start_s, end_s, normalized = fields
        if doc_id not in trees:
            raise ArchiveIntegrityError(f"tokens.tsv:{lineno}: unknown document {doc_id!r}")
        cid = _parse_int_field("tokens.tsv", lineno, "cid", cid_s)
        tree = trees[doc_id]
        if not (0 <= cid < len(tree.nodes)) or tree.get(cid).level != Level.PHRASE:
            raise ArchiveIntegrityError(f"tokens.tsv:{lineno}: cid {cid} is not a phrase")
        try:
            klass = TokenClass(klass_s)
        except ValueError:
            raise ArchiveIntegrityError(f"tokens.tsv:{lineno}: unknown class {klass_s!r}") from None
        start = _parse_int_field("tokens.tsv", lineno, "start", start_s)
        end = _parse_int_field("tokens.tsv", lineno, "end", end_s)
        phrase = tree.get(cid)
        if not (phrase.start <= start <= end <= phrase.end):
            raise ArchiveIntegrityError(f"tokens.tsv:{lineno}: token span escapes its phrase")
        index = _parse_int_field("tokens.tsv", lineno, "index", index_s)
        held = doc_tokens[doc_id].setdefault(cid, [])
        if index != len(held):
            raise ArchiveIntegrityError(f"tokens.tsv:{lineno}: token indices not consecutive")
        held.append(
            Token(texts[doc_id][start:end], _unescape(normalized), index, klass, start)
        )

    documents = {
        doc_id: Document(
            doc_id=doc_id,
            language=doc_meta[doc_id][1],
            text=texts[doc_id],
            tree=trees[doc_id],
            tokens={cid: tuple(ts) for cid, ts in sorted(doc_tokens[doc_id].items())},
        )
        for doc_id in sorted(doc_meta)
    }

    # Bitexts and their links.
    bitext_rows: dict[str, tuple[int, str, str, frozenset[Level]]] = {}
    for lineno, (bitext_id, src_id, tgt_id, degraded_s) in _named(reader.rows("bitexts.tsv", 4)):
        if bitext_id in bitext_rows:
            raise ArchiveIntegrityError(f"bitexts.tsv:{lineno}: duplicate bitext {bitext_id!r}")
        for doc_id in (src_id, tgt_id):
            if doc_id not in documents:
                raise ArchiveIntegrityError(
                    f"bitexts.tsv:{lineno}: unknown document {doc_id!r}"
                )
        degraded = frozenset(
            _parse_level("bitexts.tsv", lineno, tag) for tag in degraded_s.split(",") if tag
        )
        bitext_rows[bitext_id] = (lineno, src_id, tgt_id, degraded)

    links_by_bitext: dict[str, dict[Level, list[Link]]] = {
        bid: {level: [] for level in Level} for bid in bitext_rows
    }
    for lineno, fields in reader.rows("links.tsv", 6):
        bitext_id, level_s, ordinal_s, src_s, tgt_s, cost_s = fields
        if bitext_id not in bitext_rows:
            raise ArchiveIntegrityError(f"links.tsv:{lineno}: unknown bitext {bitext_id!r}")
        level = _parse_level("links.tsv", lineno, level_s)
        src = tuple(
            _parse_int_field("links.tsv", lineno, "src cid", c) for c in src_s.split(",") if c
        )
        tgt = tuple(
            _parse_int_field("links.tsv", lineno, "tgt cid", c) for c in tgt_s.split(",") if c
        )
        cost = _parse_float_field("links.tsv", lineno, "cost", cost_s)
        ordinal = _parse_int_field("links.tsv", lineno, "ordinal", ordinal_s)
        held = links_by_bitext[bitext_id][level]
        if ordinal != len(held):
            raise ArchiveIntegrityError(f"links.tsv:{lineno}: ordinals not consecutive")
        try:
            held.append(Link(level, src, tgt, cost))
        except Exception as exc:
            raise ArchiveIntegrityError(f"links.tsv:{lineno}: {exc}") from None

    bitexts = []
    for bitext_id in sorted(bitext_rows):
        lineno, src_id, tgt_id, degraded = bitext_rows[bitext_id]
        bitext = Bitext(
            bitext_id=bitext_id,
            source=documents[src_id],
            target=documents[tgt_id],
            links={level: tuple(ls) for level, ls in links_by_bitext[bitext_id].items()},
            degraded=degraded,
        )
        try:
            validate_bitext(bitext)
        except ValueError as exc:
            raise ArchiveIntegrityError(f"links.tsv: bitext {bitext_id!r}: {exc}") from None
        bitexts.append(bitext)

    lexicon = _load_lexicon(reader, manifest, {b.bitext_id: b for b in bitexts})
    phrase_lists = _load_phrases(reader, manifest, documents)
    forks = _load_forks(reader, manifest)

    return Archive(
        config=config,
        documents=tuple(documents.values()),
        bitexts=tuple(bitexts),
        lexicon=lexicon,
        phrase_lists=phrase_lists,
        forks=forks,
        format_version=version,
    )


def _named(rows):
    for lineno, fields in rows:
        yield lineno, fields


def _load_lexicon(reader, manifest, bitexts) -> Optional[CounterwordLexicon]:
    if manifest.get("has_lexicon") != "true":
        return None
    threshold_s = manifest.get("lexicon_threshold")
    if threshold_s is None:
        raise ArchiveIntegrityError("manifest.tsv: has_lexicon without lexicon_threshold")
    evidence: dict[tuple[str, str], list[tuple[str, int]]] = {}
    for lineno, (s, t, bitext_id, ordinal_s) in _named(reader.rows("lexicon_evidence.tsv", 4)):
        bitext = bitexts.get(bitext_id)
        if bitext is None:
            raise ArchiveIntegrityError(
                f"lexicon_evidence.tsv:{lineno}: unknown bitext {bitext_id!r}"
            )
        ordinal = _parse_int_field("lexicon_evidence.tsv", lineno, "ordinal", ordinal_s)
        if ordinal >= len(bitext.links_at(Level.PHRASE)):
            raise ArchiveIntegrityError(
                f"lexicon_evidence.tsv:{lineno}: phrase link {ordinal} does not exist"
            )
        evidence.setdefault((s, t), []).append((bitext_id, ordinal))
    entries = []
    for lineno, fields in reader.rows("lexicon.tsv", 7):
        s, t, score_s, pos_s, freq_s, len_s, cooc_s = fields
        entries.append(
            CounterwordEntry(
                source_type=s,
                target_type=t,
                score=_parse_float_field("lexicon.tsv", lineno, "score", score_s),
                pos=_parse_float_field("lexicon.tsv", lineno, "pos", pos_s),
                freq=_parse_float_field("lexicon.tsv", lineno, "freq", freq_s),
                len=_parse_float_field("lexicon.tsv", lineno, "len", len_s),
                cooc=_parse_int_field("lexicon.tsv", lineno, "cooc", cooc_s),
                evidence=tuple(evidence.get((s, t), ())),
            )
        )
    source_freq: dict[str, int] = {}
    target_freq: dict[str, int] = {}
    for lineno, (side, word, count_s) in _named(reader.rows("frequencies.tsv", 3)):
        if side not in SIDES:
            raise ArchiveIntegrityError(f"frequencies.tsv:{lineno}: unknown side {side!r}")
        table = source_freq if side == SOURCE else target_freq
        table[word] = _parse_int_field("frequencies.tsv", lineno, "count", count_s)
    return CounterwordLexicon(
        entries=tuple(entries),
        threshold=_parse_float_field("manifest.tsv", 0, "lexicon_threshold", threshold_s),
        source_freq=source_freq,
        target_freq=target_freq,
        source_tokens=sum(source_freq.values()),
        target_tokens=sum(target_freq.values()),
    )


def _load_phrases(reader, manifest, documents) -> Optional[Mapping[str, tuple[PhraseListEntry, ...]]]:
    if manifest.get("has_phrases") != "true":
        return None
    lists: dict[str, list[PhraseListEntry]] = {side: [] for side in SIDES}
    for lineno, fields in reader.rows("phrases.tsv", 7):
        side, ngram_s, freq_s, sample_doc, sample_cid_s, paired_gram, paired_score = fields
        if side not in SIDES:
            raise ArchiveIntegrityError(f"phrases.tsv:{lineno}: unknown side {side!r}")
        if sample_doc not in documents:
            raise ArchiveIntegrityError(f"phrases.tsv:{lineno}: unknown document {sample_doc!r}")
        cid = _parse_int_field("phrases.tsv", lineno, "sample cid", sample_cid_s)
        tree = documents[sample_doc].tree
        if not (0 <= cid < len(tree.nodes)):
            raise ArchiveIntegrityError(f"phrases.tsv:{lineno}: unknown constituent {cid}")
        paired = None
        if paired_gram or paired_score:
            paired = (
                tuple(paired_gram.split(" ")),
                _parse_float_field("phrases.tsv", lineno, "paired score", paired_score),
            )
        lists[side].append(
            PhraseListEntry(
                ngram=tuple(ngram_s.split(" ")),
                freq=_parse_int_field("phrases.tsv", lineno, "freq", freq_s),
                sample=(sample_doc, cid),
                paired=paired,
            )
        )
    return {side: tuple(entries) for side, entries in lists.items()}


def _load_forks(reader, manifest) -> Optional[tuple[ForkReport, ...]]:
    if manifest.get("has_forks") != "true":
        return None
    reports = []
    for lineno, (side, pivot, severity_s, branches_s) in _named(reader.rows("forks.tsv", 4)):
        if side not in SIDES:
            raise ArchiveIntegrityError(f"forks.tsv:{lineno}: unknown side {side!r}")
        branches = []
        for item in branches_s.split(","):
            parts = item.split(":")
            if len(parts) != 3:
                raise ArchiveIntegrityError(f"forks.tsv:{lineno}: malformed branch {item!r}")
            branches.append(
                ForkBranch(
                    counterpart=parts[0],
                    score=_parse_float_field("forks.tsv", lineno, "branch score", parts[1]),
                    cooc=_parse_int_field("forks.tsv", lineno, "branch cooc", parts[2]),
                )
            )
        if len(branches) < 2:
            raise ArchiveIntegrityError(f"forks.tsv:{lineno}: fork needs at least two branches")
        reports.append(
            ForkReport(
                pivot=pivot,
                side=side,
                branches=tuple(branches),
                severity=_parse_float_field("forks.tsv", lineno, "severity", severity_s),
            )
        )
    return tuple(reports)
