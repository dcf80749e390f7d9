"""Read-only HTTP API over a loaded archive.

Every response is derived from the archive alone; the server holds no
other state and never mutates anything. Malformed parameters yield 400,
unknown ids and words 404 (distinct from empty results, which are 200).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .archive import Archive
from .config import config_sha256
from .errors import ConfigError, SpanRangeError
from .lexica import corpus_stats
from .model import SIDES, Level
from .queries import concordance, counterwords_query, countertext


def _span(pair: tuple[int, int]) -> list[int]:
    return [pair[0], pair[1]]


def _check_side(side: str) -> str:
    if side not in SIDES:
        raise HTTPException(status_code=400, detail=f"side must be one of {SIDES}, got {side!r}")
    return side


def create_app(archive: Archive) -> FastAPI:
    app = FastAPI(title="alignlex", docs_url=None, redoc_url=None)
    app.state.archive = archive
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc.errors())})

    @app.exception_handler(ConfigError)
    async def _config_handler(request: Request, exc: ConfigError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(SpanRangeError)
    async def _range_handler(request: Request, exc: SpanRangeError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/archive/summary")
    def archive_summary():
        lexicon = archive.lexicon
        return {
            "format_version": archive.format_version,
            "documents": len(archive.documents),
            "bitexts": len(archive.bitexts),
            "lexicon": None
            if lexicon is None
            else {
                "entries": len(lexicon.entries),
                "presented": len(lexicon.presented_entries()),
                "threshold": lexicon.threshold,
            },
            "phrases": None
            if archive.phrase_lists is None
            else {side: len(archive.phrase_lists.get(side, ())) for side in SIDES},
            "forks": None if archive.forks is None else len(archive.forks),
            "config_sha256": config_sha256(archive.config),
        }

    @app.get("/bitexts")
    def list_bitexts():
        out = []
        for b in archive.bitexts:
            out.append(
                {
                    "id": b.bitext_id,
                    "source": _doc_summary(b.source),
                    "target": _doc_summary(b.target),
                    "links": {level.tag: len(b.links_at(level)) for level in Level},
                    "degraded": sorted(level.tag for level in b.degraded),
                }
            )
        return {"bitexts": out}

    @app.get("/bitexts/{bitext_id}")
    def bitext_detail(bitext_id: str):
        b = _bitext_or_404(bitext_id)
        paragraph_links = []
        for link in b.links_at(Level.PARAGRAPH):
            paragraph_links.append(
                {
                    "src": [_span(b.source.tree.get(c).span) for c in link.src],
                    "tgt": [_span(b.target.tree.get(c).span) for c in link.tgt],
                }
            )
        return {
            "id": b.bitext_id,
            "source": _doc_full(b.source),
            "target": _doc_full(b.target),
            "paragraph_links": paragraph_links,
        }

    @app.get("/bitexts/{bitext_id}/countertext")
    def bitext_countertext(bitext_id: str, side: str, start: int, end: int):
        b = _bitext_or_404(bitext_id)
        _check_side(side)
        if start > end:
            raise HTTPException(status_code=400, detail="start must not exceed end")
        rungs = countertext(b, side, start, end)
        doc = b.document(side)
        other = b.target if side == "source" else b.source
        return {
            "bitext": b.bitext_id,
            "side": side,
            "span": [start, end],
            "rungs": [
                {
                    "level": r.constituent.level.tag,
                    "span": _span(r.constituent.span),
                    "text": doc.text[r.constituent.start : r.constituent.end],
                    "linked": r.linked,
                    "counterparts": [
                        {
                            "span": _span(c.span),
                            "text": other.text[c.start : c.end],
                        }
                        for c in r.counterparts
                    ],
                    "cost": r.link.cost if r.link is not None else None,
                }
                for r in rungs
            ],
        }

    @app.get("/lexicon/counterwords")
    def lexicon_counterwords(word: str, side: str = "source"):
        _check_side(side)
        answer = counterwords_query(archive, word, side)
        if not answer.found:
            raise HTTPException(
                status_code=404,
                detail={"error": "not_found", "word": answer.word, "side": side},
            )
        ev = answer.evaluation
        return {
            "word": answer.word,
            "side": side,
            "threshold": archive.lexicon.threshold if archive.lexicon else None,
            "entries": [
                {
                    "source": e.source_type,
                    "target": e.target_type,
                    "score": e.score,
                    "pos": e.pos,
                    "freq": e.freq,
                    "len": e.len,
                    "cooc": e.cooc,
                }
                for e in answer.entries
            ],
            "evaluation": {
                "found": ev.found,
                "frequency": ev.frequency,
                "candidates": ev.candidates,
                "max_score": ev.max_score,
                "flags": list(ev.flags),
            },
        }

    @app.get("/concordance")
    def concordance_endpoint(term: str, side: str = "source", limit: int = 20):
        _check_side(side)
        result = concordance(archive, term, side, limit=limit)
        return {
            "term": " ".join(result.term),
            "side": side,
            "total": result.total,
            "limit": limit,
            "hits": [
                {
                    "doc_id": h.doc_id,
                    "phrase_span": _span(h.phrase.span),
                    "highlight": _span(h.highlight),
                    "sentence_span": _span(h.sentence_span),
                    "sentence_text": h.sentence_text,
                    "counterparts": [
                        {"doc_id": c.doc_id, "span": [c.start, c.end], "text": c.text}
                        for c in h.counterparts
                    ],
                }
                for h in result.hits
            ],
        }

    @app.get("/reports/forks")
    def reports_forks():
        forks = archive.forks or ()
        return {
            "forks": [
                {
                    "side": r.side,
                    "pivot": r.pivot,
                    "severity": r.severity,
                    "branches": [
                        {"counterpart": b.counterpart, "score": b.score, "cooc": b.cooc}
                        for b in r.branches
                    ],
                }
                for r in forks
            ]
        }

    @app.get("/reports/phrases")
    def reports_phrases(side: str = "source"):
        _check_side(side)
        lists = archive.phrase_lists or {}
        return {
            "side": side,
            "entries": [
                {
                    "ngram": list(e.ngram),
                    "freq": e.freq,
                    "sample": {"doc_id": e.sample[0], "cid": e.sample[1]},
                    "paired": None
                    if e.paired is None
                    else {"ngram": list(e.paired[0]), "score": e.paired[1]},
                }
                for e in lists.get(side, ())
            ],
        }

    @app.get("/stats")
    def stats():
        normalizer = archive.config.normalizer
        out = {}
        for side in SIDES:
            s = corpus_stats(archive.side_documents(side), normalizer)
            out[side] = {
                "token_count": s.token_count,
                "type_count": s.type_count,
                "hapax_type_ratio": s.hapax_type_ratio,
                "below5_type_ratio": s.below5_type_ratio,
                "hapax_token_ratio": s.hapax_token_ratio,
                "below5_token_ratio": s.below5_token_ratio,
            }
        return out

    def _doc_summary(doc):
        return {"doc_id": doc.doc_id, "language": doc.language, "chars": len(doc.text)}

    def _doc_full(doc):
        return {"doc_id": doc.doc_id, "language": doc.language, "text": doc.text}

    def _bitext_or_404(bitext_id: str):
        b = archive.bitext(bitext_id)
        if b is None:
            raise HTTPException(
                status_code=404, detail={"error": "not_found", "bitext": bitext_id}
            )
        return b

    return app
