"""Configuration parsing, validation and canonical dumps."""

from __future__ import annotations

import pytest

from alignlex.config import (
    DEFAULT_CONFIG,
    Config,
    config_sha256,
    dump_config,
    parse_config,
)
from alignlex.errors import ConfigError


def test_empty_config_is_defaults():
    assert parse_config("") == DEFAULT_CONFIG


def test_comments_and_blanks_are_skipped():
    parsed = parse_config("# a comment\n\nassign.threshold = 0.7\n")
    assert parsed.threshold == 0.7


def test_unknown_key_is_rejected():
    with pytest.raises(ConfigError) as caught:
        parse_config("assign.thresold = 0.7")
    assert "unknown key" in str(caught.value)


def test_duplicate_key_is_rejected():
    with pytest.raises(ConfigError):
        parse_config("assign.threshold = 0.7\nassign.threshold = 0.8")


def test_malformed_line_is_rejected():
    with pytest.raises(ConfigError):
        parse_config("just some words")


def test_values_out_of_range_are_rejected():
    with pytest.raises(ConfigError):
        parse_config("assign.threshold = 1.5")
    with pytest.raises(ConfigError):
        parse_config("phrases.min_freq = 1")
    with pytest.raises(ConfigError):
        parse_config("phrases.max_len = 7")
    with pytest.raises(ConfigError):
        parse_config("align.band_slack = 0")
    with pytest.raises(ConfigError):
        parse_config("align.w_num = -2")
    with pytest.raises(ConfigError):
        parse_config("assign.threshold = abc")
    with pytest.raises(ConfigError):
        parse_config("align.band_proportional = maybe")
    with pytest.raises(ConfigError):
        parse_config("normalizer = nope")


def test_pattern_subset_is_enforced():
    with pytest.raises(ConfigError):
        parse_config(r"segment.phrase_delimiter = (a)\1")


def test_segmentation_and_band_settings_apply():
    parsed = parse_config(
        "segment.abbreviations = Art, No\n"
        "align.band_slack = 5\n"
        "align.band_proportional = false\n"
        "align.penalty_1_0 = 4.5\n"
        "normalizer = identity\n"
    )
    assert parsed.rules.abbreviations == frozenset({"Art", "No"})
    assert parsed.band.slack == 5
    assert not parsed.band.proportional
    assert parsed.cost_model.penalty((1, 0)) == 4.5
    assert parsed.normalizer_name == "identity"


def test_dump_round_trips_and_hash_is_stable():
    config = parse_config("assign.threshold = 0.65\nforks.threshold = 0.4\n")
    dumped = dump_config(config)
    assert parse_config(dumped) == config
    assert config_sha256(config) == config_sha256(parse_config(dumped))
    assert dump_config(DEFAULT_CONFIG) == dump_config(Config())


def test_association_weights_parse_and_normalize():
    parsed = parse_config("assign.w_pos = 1\nassign.w_freq = 1\nassign.w_len = 0\n")
    assert parsed.weights.w_pos == 0.5
    assert parsed.weights.w_freq == 0.5
    assert parsed.weights.w_len == 0.0
