"""Bitext structuring, counterword lexica and translator query services."""

from .model import (
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
    context_ladder,
    counterpart,
    smallest_enclosing,
)
from .segmenter import (
    CASEFOLD_NORMALIZER,
    DEFAULT_RULES,
    IDENTITY_NORMALIZER,
    Normalizer,
    SegmentationRules,
    build_document,
    get_normalizer,
    normalize_tokens,
    register_normalizer,
    segment,
    tokenize,
)
from .aligner import (
    AnchorSignature,
    Band,
    CostModel,
    LevelAlignment,
    align_bitext,
    align_level,
    bead_cost,
    signature,
)
from .assigner import (
    AssociationWeights,
    CooccurrenceTable,
    CounterwordEntry,
    CounterwordLexicon,
    SelfEvaluation,
    assign,
    association,
    collect,
    self_evaluation,
)
from .lexica import (
    CorpusStats,
    ForkBranch,
    ForkReport,
    PhraseListEntry,
    corpus_stats,
    detect_forks,
    extract_phrases,
)
from .config import Config, DEFAULT_CONFIG, load_config, parse_config
from .archive import Archive, load, save
from .queries import (
    ConcordanceHit,
    ConcordanceResult,
    CounterwordAnswer,
    LadderRung,
    concordance,
    counterwords_query,
    countertext,
)

__version__ = "0.1.0"
