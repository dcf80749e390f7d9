"""Persistence: round-trips, byte stability and corruption detection."""

from __future__ import annotations

import os
import pathlib

import pytest

from alignlex.archive import Archive, load, save
from alignlex.config import DEFAULT_CONFIG
from alignlex.errors import (
    ArchiveIntegrityError,
    ArchiveTruncatedError,
    ArchiveVersionError,
)

from conftest import random_archive


def archive_bytes(path: str) -> dict[str, bytes]:
    root = pathlib.Path(path)
    return {
        str(f.relative_to(root)): f.read_bytes() for f in sorted(root.rglob("*")) if f.is_file()
    }


def test_empty_archive_round_trip(tmp_path):
    archive = Archive(config=DEFAULT_CONFIG)
    target = str(tmp_path / "arch")
    save(archive, target)
    assert load(target) == archive


def test_round_trip_and_byte_stable_resave(tmp_path):
    archive = random_archive(1)
    first = str(tmp_path / "a")
    second = str(tmp_path / "b")
    save(archive, first)
    loaded = load(first)
    assert loaded == archive
    save(loaded, second)
    assert archive_bytes(first) == archive_bytes(second)


def test_save_replaces_existing_archive(tmp_path):
    target = str(tmp_path / "arch")
    save(random_archive(2), target)
    replacement = random_archive(3)
    save(replacement, target)
    assert load(target) == replacement


def test_many_random_archives_round_trip(tmp_path):
    for seed in range(6):
        archive = random_archive(seed)
        target = str(tmp_path / f"arch{seed}")
        save(archive, target)
        assert load(target) == archive


def _mutate_line(path: pathlib.Path, match: str, new_line: str) -> None:
    lines = path.read_text(encoding="utf-8").splitlines()
    for i, line in enumerate(lines):
        if match in line:
            lines[i] = new_line
            break
    else:
        raise AssertionError(f"no line matching {match!r} in {path}")
    path.write_text("".join(l + "\n" for l in lines), encoding="utf-8")


def test_corrupted_link_record_is_named(tmp_path):
    archive = random_archive(1)
    target = tmp_path / "arch"
    save(archive, str(target))
    links = target / "links.tsv"
    first = links.read_text(encoding="utf-8").splitlines()[0].split("\t")
    first[3] = "9999"  # dangling source constituent
    _mutate_line(links, "\t", "\t".join(first))
    with pytest.raises(ArchiveIntegrityError) as caught:
        load(str(target))
    assert "links.tsv" in str(caught.value)


def test_malformed_record_reports_file_and_line(tmp_path):
    archive = random_archive(4)
    target = tmp_path / "arch"
    save(archive, str(target))
    tokens = target / "tokens.tsv"
    content = tokens.read_text(encoding="utf-8").splitlines()
    content[2] = "only\tthree\tfields"
    tokens.write_text("".join(l + "\n" for l in content), encoding="utf-8")
    with pytest.raises(ArchiveIntegrityError) as caught:
        load(str(target))
    assert "tokens.tsv:3" in str(caught.value)


def test_truncated_file_is_detected(tmp_path):
    archive = random_archive(1)
    target = tmp_path / "arch"
    save(archive, str(target))
    tokens = target / "tokens.tsv"
    lines = tokens.read_text(encoding="utf-8").splitlines()
    tokens.write_text("".join(l + "\n" for l in lines[:-1]), encoding="utf-8")
    with pytest.raises(ArchiveTruncatedError):
        load(str(target))


def test_missing_index_file_is_truncation(tmp_path):
    archive = random_archive(1)
    target = tmp_path / "arch"
    save(archive, str(target))
    os.unlink(target / "bitexts.tsv")
    with pytest.raises(ArchiveTruncatedError):
        load(str(target))


def test_version_mismatch(tmp_path):
    archive = Archive(config=DEFAULT_CONFIG)
    target = tmp_path / "arch"
    save(archive, str(target))
    _mutate_line(target / "manifest.tsv", "format_version", "format_version\t99")
    with pytest.raises(ArchiveVersionError):
        load(str(target))


def test_config_tamper_is_integrity_error(tmp_path):
    archive = Archive(config=DEFAULT_CONFIG)
    target = tmp_path / "arch"
    save(archive, str(target))
    _mutate_line(target / "config.txt", "assign.threshold", "assign.threshold = 0.9")
    with pytest.raises(ArchiveIntegrityError) as caught:
        load(str(target))
    assert "config" in str(caught.value)


def test_missing_archive_directory(tmp_path):
    with pytest.raises(FileNotFoundError):
        load(str(tmp_path / "nowhere"))


def test_evidence_references_resolve_after_load(tmp_path):
    archive = random_archive(0)
    assert archive.lexicon is not None
    target = str(tmp_path / "arch")
    save(archive, target)
    loaded = load(target)
    lookup = {b.bitext_id: b for b in loaded.bitexts}
    from alignlex.model import Level

    for e in loaded.lexicon.entries:
        for bitext_id, ordinal in e.evidence:
            assert bitext_id in lookup
            assert ordinal < len(lookup[bitext_id].links_at(Level.PHRASE))
