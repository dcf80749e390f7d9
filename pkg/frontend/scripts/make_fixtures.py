#!/usr/bin/env python3
"""Build the UI test fixtures from a real archive served by the real API.

Constructs a small archive containing every state the UI tests exercise
(1:1 links, a 2:1 sentence bead, an unlinked paragraph, a known word, a
hapax and a fork pivot), then captures the JSON of a fixed set of
requests into ../fixtures/responses.json keyed by "METHOD path?query".

Run from the repository root:  python3 frontend/scripts/make_fixtures.py
"""

from __future__ import annotations

import json
import pathlib
import sys

from fastapi.testclient import TestClient

from alignlex.api import create_app
from alignlex.archive import Archive
from alignlex.assigner import assign
from alignlex.config import DEFAULT_CONFIG
from alignlex.lexica import detect_forks, extract_phrases
from alignlex.model import Bitext, Level, Link
from alignlex.segmenter import build_document

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def beaded_bitext() -> Bitext:
    """Hand-linked bitext: 1:1 phrase, a 2:1 sentence bead, a 1:0 paragraph.

    Source cids: 0 root, 1 para1, 2 sent "Alpha beta.", 3 its phrase,
    4 sent "Gamma delta.", 5 its phrase, 6 orphan para, 7 sent, 8 phrase.
    Target cids: 0 root, 1 para1, 2 sent "Intro words.", 3 its phrase,
    4 merged sent, 5 its phrase.
    """
    source = build_document(
        "guide", "en", "Intro words. Alpha beta. Gamma delta.\n\nOrphan paragraph here.\n"
    )
    target = build_document("manual", "sv", "Intro mots. Alfa beta gamma delta.\n")
    # Source: 1 para with 3 sentences + orphan para; target: 1 para, 2 sentences.
    links = {
        Level.DOCUMENT: (Link(Level.DOCUMENT, (0,), (0,)),),
        Level.PARAGRAPH: (
            Link(Level.PARAGRAPH, (1,), (1,), cost=0.1),
            Link(Level.PARAGRAPH, (8,), (), cost=3.0),
        ),
        Level.SENTENCE: (
            Link(Level.SENTENCE, (2,), (2,), cost=0.0),
            Link(Level.SENTENCE, (4, 6), (4,), cost=1.5),
        ),
        Level.PHRASE: (
            Link(Level.PHRASE, (3,), (3,), cost=0.0),
            Link(Level.PHRASE, (5, 7), (5,), cost=1.5),
        ),
    }
    return Bitext(bitext_id="guide__manual", source=source, target=target, links=links)


def lexicon_bitext() -> Bitext:
    """One-word phrases giving a solid pair, a hapax and a planted fork."""
    sources = ["word."] * 6 + ["rare."] + ["vessel."] * 8
    targets = ["mots."] * 6 + ["seul."] + ["fartyg."] * 4 + ["skeppo."] * 4
    source = build_document("terms-en", "en", "\n\n".join(sources) + "\n")
    target = build_document("terms-sv", "sv", "\n\n".join(targets) + "\n")
    src_phrases = source.tree.at_level(Level.PHRASE)
    tgt_phrases = target.tree.at_level(Level.PHRASE)
    links = {
        Level.DOCUMENT: (Link(Level.DOCUMENT, (0,), (0,)),),
        Level.PHRASE: tuple(
            Link(Level.PHRASE, (a.cid,), (b.cid,))
            for a, b in zip(src_phrases, tgt_phrases)
        ),
    }
    return Bitext(bitext_id="terms-en__terms-sv", source=source, target=target, links=links)


def build_archive() -> Archive:
    beaded = beaded_bitext()
    terms = lexicon_bitext()
    bitexts = (beaded, terms)
    lexicon = assign(bitexts)
    return Archive(
        config=DEFAULT_CONFIG,
        documents=(beaded.source, beaded.target, terms.source, terms.target),
        bitexts=bitexts,
        lexicon=lexicon,
        phrase_lists={
            side: extract_phrases(bitexts, side=side, lexicon=lexicon)
            for side in ("source", "target")
        },
        forks=detect_forks(lexicon),
    )


def main() -> int:
    archive = build_archive()
    beaded = archive.bitext("guide__manual")
    src_tree = beaded.source.tree
    tgt_tree = beaded.target.tree

    one_to_one = src_tree.get(3)          # "Intro words." phrase (1:1)
    merged_target = tgt_tree.get(4)       # merged target sentence (2:1 bead)
    orphan = src_tree.get(10)             # phrase of the orphan paragraph
    gap = beaded.source.text.index("\n\n")

    requests = [
        "/archive/summary",
        "/bitexts",
        "/bitexts/guide__manual",
        f"/bitexts/guide__manual/countertext?side=source&start={one_to_one.start}&end={one_to_one.end}",
        f"/bitexts/guide__manual/countertext?side=target&start={merged_target.start + 1}&end={merged_target.end - 1}",
        f"/bitexts/guide__manual/countertext?side=source&start={orphan.start}&end={orphan.end}",
        f"/bitexts/guide__manual/countertext?side=source&start={gap}&end={gap + 2}",
        "/lexicon/counterwords?word=word&side=source",
        "/lexicon/counterwords?word=rare&side=source",
        "/lexicon/counterwords?word=vessel&side=source",
        "/lexicon/counterwords?word=mots&side=target",
        "/lexicon/counterwords?word=notacorpusword&side=source",
        "/concordance?term=word&side=source&limit=2",
        "/concordance?term=word&side=source&limit=20",
        "/concordance?term=vessel&side=source&limit=20",
        "/reports/forks",
        "/reports/phrases?side=source",
        "/stats",
    ]

    client = TestClient(create_app(archive))
    captured = {}
    for url in requests:
        response = client.get(url)
        captured[f"GET {url}"] = {
            "status": response.status_code,
            "body": response.json(),
        }

    FIXTURES.mkdir(parents=True, exist_ok=True)
    out = FIXTURES / "responses.json"
    out.write_text(json.dumps(captured, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(captured)} responses)")

    # Sanity: the states the UI tests rely on really are in the fixtures.
    sent_rungs = captured[
        f"GET /bitexts/guide__manual/countertext?side=target&start={merged_target.start + 1}&end={merged_target.end - 1}"
    ]["body"]["rungs"]
    merged = [r for r in sent_rungs if r["level"] == "sentence"][0]
    assert len(merged["counterparts"]) == 2, "2:1 bead fixture must list both source sentences"
    vessel = captured["GET /lexicon/counterwords?word=vessel&side=source"]["body"]
    assert len(vessel["entries"]) == 2, "fork fixture must present two candidates"
    rare = captured["GET /lexicon/counterwords?word=rare&side=source"]["body"]
    assert "SPARSE" in rare["evaluation"]["flags"]
    assert captured["GET /lexicon/counterwords?word=notacorpusword&side=source"]["status"] == 404
    orphan_rungs = captured[
        f"GET /bitexts/guide__manual/countertext?side=source&start={orphan.start}&end={orphan.end}"
    ]["body"]["rungs"]
    assert any(not r["linked"] for r in orphan_rungs), "orphan fixture must have unlinked rungs"
    print("fixture invariants hold")
    return 0


if __name__ == "__main__":
    sys.exit(main())
