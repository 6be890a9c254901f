"""Non-neural machinery for generate-then-correct aspect sentiment quad prediction."""

__version__ = "0.1.0"

from .codec import build_corrector_input, parse_quads, serialize_quads
from .corpus import CorrectorExample, dataset_stats, import_legacy_line
from .errors import align_quads, classify_errors, migration_matrix, mismatch_cost
from .metrics import EvalReport, score_corpus, score_example
from .quads import (
    DEFAULT_TAXONOMY,
    IMPLICIT,
    AnnotatedSentence,
    Quad,
    Sentiment,
    Taxonomy,
    canonicalize_term,
    quad_equal,
    validate_quad,
)
from .sim import ChannelConfig, run_pipeline_sim, simulate_corrector, simulate_generator
from .synth import SynthConfig, qc_filter, synthesize_drafts

__all__ = [
    "AnnotatedSentence",
    "ChannelConfig",
    "CorrectorExample",
    "DEFAULT_TAXONOMY",
    "EvalReport",
    "IMPLICIT",
    "Quad",
    "Sentiment",
    "SynthConfig",
    "Taxonomy",
    "align_quads",
    "build_corrector_input",
    "canonicalize_term",
    "classify_errors",
    "dataset_stats",
    "import_legacy_line",
    "migration_matrix",
    "mismatch_cost",
    "parse_quads",
    "qc_filter",
    "quad_equal",
    "run_pipeline_sim",
    "score_corpus",
    "score_example",
    "serialize_quads",
    "simulate_corrector",
    "simulate_generator",
    "synthesize_drafts",
    "validate_quad",
]
