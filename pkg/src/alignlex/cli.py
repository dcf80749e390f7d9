"""Command-line pipeline driver.

Commands read or extend an archive directory and print machine-readable
JSON to stdout; diagnostics go to stderr. Exit codes: 0 success (possibly
with warnings), 2 configuration error, 3 missing input, 4 archive
integrity failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Optional, Sequence

from . import __version__
from .aligner import align_bitext
from .archive import Archive, load, save
from .assigner import assign
from .config import DEFAULT_CONFIG, Config, config_sha256, load_config
from .errors import (
    ArchiveError,
    ArchiveIntegrityError,
    ArchiveTruncatedError,
    ArchiveVersionError,
    ConfigError,
)
from .lexica import corpus_stats, detect_forks, extract_phrases
from .model import SIDES, SOURCE, Bitext, Level
from .queries import concordance, counterwords_query, countertext
from .segmenter import build_document
from .synth import precision_against_dictionary

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_MISSING = 3
EXIT_INTEGRITY = 4

_DOC_ID_RE = re.compile(r"[A-Za-z0-9._\-]+\Z")


def _emit(payload) -> None:
    print(json.dumps(payload, ensure_ascii=False, sort_keys=True))


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _read_text(path: str) -> str:
    if not os.path.isfile(path):
        raise FileNotFoundError(path)
    with open(path, "r", encoding="utf-8", newline="") as handle:
        return handle.read().replace("\r\n", "\n")


def _doc_id_for(path: str, override: Optional[str]) -> str:
    doc_id = override or os.path.splitext(os.path.basename(path))[0]
    if not _DOC_ID_RE.match(doc_id):
        raise ConfigError(
            f"document id {doc_id!r} must match [A-Za-z0-9._-]+ (use --src-id/--tgt-id)"
        )
    return doc_id


def _load_archive(path: str) -> Archive:
    if not os.path.isdir(path):
        raise FileNotFoundError(path)
    return load(path)


def _resolve_config(args, archive: Optional[Archive]) -> Config:
    if getattr(args, "config", None):
        config = load_config(args.config)
        if archive is not None and config_sha256(config) != config_sha256(archive.config):
            raise ConfigError(
                "--config differs from the archive's configuration snapshot; "
                "rebuild the archive to change settings"
            )
        return config
    if archive is not None:
        return archive.config
    return DEFAULT_CONFIG


def cmd_ingest(args) -> int:
    archive = _load_archive(args.archive) if os.path.isdir(args.archive) else None
    config = _resolve_config(args, archive)
    if archive is None:
        archive = Archive(config=config)
    src_text = _read_text(args.src)
    tgt_text = _read_text(args.tgt)
    src_id = _doc_id_for(args.src, args.src_id)
    tgt_id = _doc_id_for(args.tgt, args.tgt_id)
    if src_id == tgt_id:
        raise ConfigError("source and target documents need distinct ids")
    normalizer = config.normalizer
    source = build_document(src_id, args.src_lang, src_text, config.rules, normalizer)
    target = build_document(tgt_id, args.tgt_lang, tgt_text, config.rules, normalizer)
    existing_ids = {d.doc_id for d in archive.documents}
    for doc in (source, target):
        if doc.doc_id in existing_ids:
            raise ConfigError(f"document {doc.doc_id!r} already ingested")
    bitext = Bitext(
        bitext_id=f"{src_id}__{tgt_id}",
        source=source,
        target=target,
        links={},
    )
    updated = Archive(
        config=config,
        documents=archive.documents + (source, target),
        bitexts=archive.bitexts + (bitext,),
        lexicon=archive.lexicon,
        phrase_lists=archive.phrase_lists,
        forks=archive.forks,
    )
    save(updated, args.archive)
    _emit(
        {
            "archive": args.archive,
            "bitext": bitext.bitext_id,
            "source": {"doc_id": src_id, "chars": len(src_text)},
            "target": {"doc_id": tgt_id, "chars": len(tgt_text)},
        }
    )
    return EXIT_OK


def cmd_align(args) -> int:
    archive = _load_archive(args.archive)
    config = _resolve_config(args, archive)
    aligned = []
    degraded: set[str] = set()
    for bitext in archive.bitexts:
        result = align_bitext(
            bitext.source,
            bitext.target,
            config.cost_model,
            config.band,
            bitext_id=bitext.bitext_id,
        )
        aligned.append(result)
        for level in result.degraded:
            degraded.add(f"{result.bitext_id}:{level.tag}")
    updated = Archive(
        config=archive.config,
        documents=archive.documents,
        bitexts=tuple(aligned),
        lexicon=archive.lexicon,
        phrase_lists=archive.phrase_lists,
        forks=archive.forks,
    )
    save(updated, args.archive)
    for item in sorted(degraded):
        _warn(f"alignment band widened beyond configuration for {item}")
    _emit(
        {
            "bitexts": len(aligned),
            "total_cost": sum(b.total_cost() for b in aligned),
            "degraded": sorted(degraded),
        }
    )
    return EXIT_OK


def cmd_assign(args) -> int:
    archive = _load_archive(args.archive)
    config = _resolve_config(args, archive)
    threshold = config.threshold if args.threshold is None else args.threshold
    lexicon = assign(
        archive.bitexts,
        normalizer=config.normalizer,
        weights=config.weights,
        threshold=threshold,
    )
    if not any(
        link.src and link.tgt
        for b in archive.bitexts
        for link in b.links_at(Level.PHRASE)
    ):
        _warn("no phrase-level links found; lexicon is empty (run `align` first?)")
    updated = Archive(
        config=archive.config,
        documents=archive.documents,
        bitexts=archive.bitexts,
        lexicon=lexicon,
        phrase_lists=archive.phrase_lists,
        forks=archive.forks,
    )
    save(updated, args.archive)
    payload = {
        "candidates": len(lexicon.entries),
        "presented": len(lexicon.presented_entries()),
        "threshold": threshold,
    }
    if args.eval_dictionary:
        dictionary = _read_dictionary(args.eval_dictionary)
        report = precision_against_dictionary(lexicon, dictionary)
        payload["evaluation"] = {
            "dictionary": args.eval_dictionary,
            "presented_assignments": report.presented,
            "correct": report.correct,
            "precision": report.precision,
        }
    _emit(payload)
    return EXIT_OK


def _read_dictionary(path: str) -> dict[str, str]:
    if not os.path.isfile(path):
        raise FileNotFoundError(path)
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise ConfigError(f"{path}:{lineno}: expected 'source TAB target'")
            out[fields[0]] = fields[1]
    return out


def cmd_phrases(args) -> int:
    archive = _load_archive(args.archive)
    config = _resolve_config(args, archive)
    min_freq = config.phrases_min_freq if args.min_freq is None else args.min_freq
    max_len = config.phrases_max_len if args.max_len is None else args.max_len
    lists = {
        side: extract_phrases(
            archive.bitexts,
            side=side,
            normalizer=config.normalizer,
            min_freq=min_freq,
            max_len=max_len,
            lexicon=archive.lexicon,
        )
        for side in SIDES
    }
    updated = Archive(
        config=archive.config,
        documents=archive.documents,
        bitexts=archive.bitexts,
        lexicon=archive.lexicon,
        phrase_lists=lists,
        forks=archive.forks,
    )
    save(updated, args.archive)
    _emit({side: len(entries) for side, entries in lists.items()})
    return EXIT_OK


def cmd_forks(args) -> int:
    archive = _load_archive(args.archive)
    config = _resolve_config(args, archive)
    if archive.lexicon is None:
        raise ConfigError("archive has no lexicon; run `assign` first")
    threshold = args.fork_threshold
    if threshold is None:
        threshold = config.fork_threshold
    reports = detect_forks(archive.lexicon, threshold)
    updated = Archive(
        config=archive.config,
        documents=archive.documents,
        bitexts=archive.bitexts,
        lexicon=archive.lexicon,
        phrase_lists=archive.phrase_lists,
        forks=reports,
    )
    save(updated, args.archive)
    _emit(
        {
            "forks": len(reports),
            "threshold": archive.lexicon.threshold if threshold is None else threshold,
        }
    )
    return EXIT_OK


def cmd_stats(args) -> int:
    archive = _load_archive(args.archive)
    config = _resolve_config(args, archive)
    payload = {}
    for side in SIDES:
        stats = corpus_stats(archive.side_documents(side), config.normalizer)
        payload[side] = {
            "token_count": stats.token_count,
            "type_count": stats.type_count,
            "hapax_type_ratio": stats.hapax_type_ratio,
            "below5_type_ratio": stats.below5_type_ratio,
            "hapax_token_ratio": stats.hapax_token_ratio,
            "below5_token_ratio": stats.below5_token_ratio,
        }
    _emit(payload)
    return EXIT_OK


def cmd_query(args) -> int:
    archive = _load_archive(args.archive)
    if args.what == "countertext":
        bitext = archive.bitext(args.bitext)
        if bitext is None:
            raise ConfigError(f"unknown bitext {args.bitext!r}")
        rungs = countertext(bitext, args.side, args.start, args.end)
        doc = bitext.document(args.side)
        other = bitext.target if args.side == SOURCE else bitext.source
        _emit(
            {
                "bitext": bitext.bitext_id,
                "side": args.side,
                "rungs": [
                    {
                        "level": r.constituent.level.tag,
                        "span": list(r.constituent.span),
                        "text": doc.text[r.constituent.start : r.constituent.end],
                        "linked": r.linked,
                        "counterparts": [
                            {"span": list(c.span), "text": other.text[c.start : c.end]}
                            for c in r.counterparts
                        ],
                    }
                    for r in rungs
                ],
            }
        )
    elif args.what == "counterwords":
        answer = counterwords_query(archive, args.word, args.side)
        _emit(
            {
                "word": answer.word,
                "side": answer.side,
                "found": answer.found,
                "entries": [
                    {
                        "source": e.source_type,
                        "target": e.target_type,
                        "score": e.score,
                        "cooc": e.cooc,
                    }
                    for e in answer.entries
                ],
                "flags": list(answer.evaluation.flags),
                "max_score": answer.evaluation.max_score,
                "frequency": answer.evaluation.frequency,
            }
        )
    else:  # concordance
        result = concordance(archive, args.term, args.side, limit=args.limit)
        _emit(
            {
                "term": " ".join(result.term),
                "side": result.side,
                "total": result.total,
                "hits": [
                    {
                        "doc_id": h.doc_id,
                        "highlight": list(h.highlight),
                        "sentence_text": h.sentence_text,
                        "counterparts": [c.text for c in h.counterparts],
                    }
                    for h in result.hits
                ],
            }
        )
    return EXIT_OK


def cmd_serve(args) -> int:
    archive = _load_archive(args.archive)
    from .api import create_app
    import uvicorn

    app = create_app(archive)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alignlex",
        description="Structure parallel texts into bitexts, derive counterword lexica "
        "and serve translator queries.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--archive", required=True, help="archive directory")
        p.add_argument("--config", help="configuration file (key = value lines)")

    p = sub.add_parser("ingest", help="segment a document pair into the archive")
    add_common(p)
    p.add_argument("--src", required=True, help="source raw-text file")
    p.add_argument("--src-lang", required=True, help="source language tag")
    p.add_argument("--tgt", required=True, help="target raw-text file")
    p.add_argument("--tgt-lang", required=True, help="target language tag")
    p.add_argument("--src-id", help="override the source document id")
    p.add_argument("--tgt-id", help="override the target document id")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("align", help="align every bitext in the archive")
    add_common(p)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("assign", help="derive the counterword lexicon")
    add_common(p)
    p.add_argument("--threshold", type=float, help="presentation cut-off override")
    p.add_argument(
        "--eval-dictionary",
        help="reference dictionary (source TAB target per line) to score presented assignments",
    )
    p.set_defaults(func=cmd_assign)

    p = sub.add_parser("phrases", help="extract draft phrase lists")
    add_common(p)
    p.add_argument("--min-freq", type=int, help="minimum n-gram frequency")
    p.add_argument("--max-len", type=int, help="maximum n-gram length")
    p.set_defaults(func=cmd_phrases)

    p = sub.add_parser("forks", help="detect translation forks")
    add_common(p)
    p.add_argument("--fork-threshold", type=float, help="branch score cut-off")
    p.set_defaults(func=cmd_forks)

    p = sub.add_parser("stats", help="corpus frequency statistics per side")
    add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("query", help="one-off queries against the archive")
    add_common(p)
    q = p.add_subparsers(dest="what", required=True)
    qc = q.add_parser("countertext", help="context ladder with counterparts")
    qc.add_argument("--bitext", required=True)
    qc.add_argument("--side", choices=SIDES, default=SOURCE)
    qc.add_argument("--start", type=int, required=True)
    qc.add_argument("--end", type=int, required=True)
    qw = q.add_parser("counterwords", help="counterword candidates for a word")
    qw.add_argument("--word", required=True)
    qw.add_argument("--side", choices=SIDES, default=SOURCE)
    qn = q.add_parser("concordance", help="phrases containing a term")
    qn.add_argument("--term", required=True)
    qn.add_argument("--side", choices=SIDES, default=SOURCE)
    qn.add_argument("--limit", type=int, default=20)
    for qp in (qc, qw, qn):
        qp.set_defaults(func=cmd_query)
    # query subparsers inherit --archive/--config from the parent parser args

    p = sub.add_parser("serve", help="serve the read-only HTTP API")
    add_common(p)
    p.add_argument("--port", type=int, default=8620)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: missing input: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except (ArchiveVersionError, ArchiveTruncatedError, ArchiveIntegrityError) as exc:
        print(f"error: archive integrity: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except ArchiveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY


if __name__ == "__main__":
    sys.exit(main())
