"""Plain-text configuration: one ``key = value`` line per tunable.

Houses every parameter the pipeline exposes: segmentation patterns, the
alignment cost model and band, association weights and threshold, the
normalizer selection and report settings. Unknown keys are rejected.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional

from .aligner import Band, CostModel
from .assigner import AssociationWeights
from .errors import ConfigError
from .segmenter import SegmentationRules, get_normalizer


@dataclass(frozen=True)
class Config:
    rules: SegmentationRules = field(default_factory=SegmentationRules)
    normalizer_name: str = "casefold"
    cost_model: CostModel = field(default_factory=CostModel)
    band: Band = field(default_factory=Band)
    weights: AssociationWeights = field(default_factory=AssociationWeights)
    threshold: float = 0.5
    phrases_min_freq: int = 2
    phrases_max_len: int = 4
    fork_threshold: Optional[float] = None
    archive_dir: Optional[str] = None

    def __post_init__(self) -> None:
        get_normalizer(self.normalizer_name)
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"assign.threshold must lie in [0, 1], got {self.threshold}")
        if self.fork_threshold is not None and not 0.0 <= self.fork_threshold <= 1.0:
            raise ConfigError(f"forks.threshold must lie in [0, 1], got {self.fork_threshold}")
        if self.phrases_min_freq < 2:
            raise ConfigError(f"phrases.min_freq must be >= 2, got {self.phrases_min_freq}")
        if not 1 <= self.phrases_max_len <= 4:
            raise ConfigError(f"phrases.max_len must lie in 1..4, got {self.phrases_max_len}")

    @property
    def normalizer(self):
        return get_normalizer(self.normalizer_name)


DEFAULT_CONFIG = Config()

_SHAPE_KEYS = {
    "align.penalty_1_1": (1, 1),
    "align.penalty_1_0": (1, 0),
    "align.penalty_0_1": (0, 1),
    "align.penalty_2_1": (2, 1),
    "align.penalty_1_2": (1, 2),
    "align.penalty_2_2": (2, 2),
}

_KNOWN_KEYS = (
    "normalizer",
    "segment.paragraph_delimiter",
    "segment.sentence_delimiter",
    "segment.phrase_delimiter",
    "segment.numeral_pattern",
    "segment.abbreviations",
    "align.w_num",
    "align.w_punct",
    "align.w_len",
    *sorted(_SHAPE_KEYS),
    "align.band_slack",
    "align.band_proportional",
    "assign.w_pos",
    "assign.w_freq",
    "assign.w_len",
    "assign.threshold",
    "phrases.min_freq",
    "phrases.max_len",
    "forks.threshold",
    "paths.archive",
)


def _parse_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {value!r}") from None


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


def _parse_bool(key: str, value: str) -> bool:
    low = value.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ConfigError(f"{key}: expected true/false, got {value!r}")


def parse_config(text: str) -> Config:
    """Parse ``key = value`` lines; '#' starts a comment, blank lines are skipped."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value

    defaults = DEFAULT_CONFIG

    def get(key: str, fallback: str) -> str:
        return values.get(key, fallback)

    rules = SegmentationRules(
        paragraph_delimiter=get("segment.paragraph_delimiter", defaults.rules.paragraph_delimiter),
        sentence_delimiter=get("segment.sentence_delimiter", defaults.rules.sentence_delimiter),
        phrase_delimiter=get("segment.phrase_delimiter", defaults.rules.phrase_delimiter),
        numeral_pattern=get("segment.numeral_pattern", defaults.rules.numeral_pattern),
        abbreviations=frozenset(
            a for a in values.get("segment.abbreviations", "").replace(",", " ").split() if a
        ),
    )
    penalties = dict(defaults.cost_model.bead_penalty)
    for key, shape in _SHAPE_KEYS.items():
        if key in values:
            penalties[shape] = _parse_float(key, values[key])
    try:
        cost_model = CostModel(
            w_num=_parse_float("align.w_num", get("align.w_num", "1.0")),
            w_punct=_parse_float("align.w_punct", get("align.w_punct", "0.5")),
            w_len=_parse_float("align.w_len", get("align.w_len", "1.0")),
            bead_penalty=tuple(sorted(penalties.items())),
        )
        band = Band(
            slack=_parse_int("align.band_slack", get("align.band_slack", "20")),
            proportional=_parse_bool(
                "align.band_proportional", get("align.band_proportional", "true")
            ),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    weights = AssociationWeights(
        w_pos=_parse_float("assign.w_pos", get("assign.w_pos", "0.4")),
        w_freq=_parse_float("assign.w_freq", get("assign.w_freq", "0.4")),
        w_len=_parse_float("assign.w_len", get("assign.w_len", "0.2")),
    )
    fork_threshold = None
    if "forks.threshold" in values:
        fork_threshold = _parse_float("forks.threshold", values["forks.threshold"])
    return Config(
        rules=rules,
        normalizer_name=get("normalizer", defaults.normalizer_name),
        cost_model=cost_model,
        band=band,
        weights=weights,
        threshold=_parse_float("assign.threshold", get("assign.threshold", "0.5")),
        phrases_min_freq=_parse_int("phrases.min_freq", get("phrases.min_freq", "2")),
        phrases_max_len=_parse_int("phrases.max_len", get("phrases.max_len", "4")),
        fork_threshold=fork_threshold,
        archive_dir=values.get("paths.archive"),
    )


def dump_config(config: Config) -> str:
    """Canonical dump: every key, sorted, with deterministic value formatting."""
    penalties = dict(config.cost_model.bead_penalty)
    pairs = {
        "normalizer": config.normalizer_name,
        "segment.paragraph_delimiter": config.rules.paragraph_delimiter,
        "segment.sentence_delimiter": config.rules.sentence_delimiter,
        "segment.phrase_delimiter": config.rules.phrase_delimiter,
        "segment.numeral_pattern": config.rules.numeral_pattern,
        "segment.abbreviations": " ".join(sorted(config.rules.abbreviations)),
        "align.w_num": repr(config.cost_model.w_num),
        "align.w_punct": repr(config.cost_model.w_punct),
        "align.w_len": repr(config.cost_model.w_len),
        "align.band_slack": str(config.band.slack),
        "align.band_proportional": "true" if config.band.proportional else "false",
        "assign.w_pos": repr(config.weights.w_pos),
        "assign.w_freq": repr(config.weights.w_freq),
        "assign.w_len": repr(config.weights.w_len),
        "assign.threshold": repr(config.threshold),
        "phrases.min_freq": str(config.phrases_min_freq),
        "phrases.max_len": str(config.phrases_max_len),
    }
    for key, shape in _SHAPE_KEYS.items():
        pairs[key] = repr(penalties[shape])
    if config.fork_threshold is not None:
        pairs["forks.threshold"] = repr(config.fork_threshold)
    if config.archive_dir is not None:
        pairs["paths.archive"] = config.archive_dir
    return "".join(f"{key} = {pairs[key]}\n" for key in sorted(pairs))


def config_sha256(config: Config) -> str:
    return hashlib.sha256(dump_config(config).encode("utf-8")).hexdigest()


def load_config(path: str) -> Config:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())
