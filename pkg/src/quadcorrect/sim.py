"""Seeded stand-ins for the two neural stages.

``simulate_generator`` corrupts gold quads at configurable per-element rates
using the same perturbation primitives as draft synthesis. ``simulate_corrector``
is an oracle: it looks at gold and repairs each error with probability
``fix_prob``. It never introduces an error, which is what makes it useful for
testing the scorer and the migration tally. It is not a model of a trained
corrector and its numbers say nothing about one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import MigrationReport, align_canonical, migration_matrix
from .metrics import EvalReport, score_lists
from .quads import (
    DEFAULT_TAXONOMY,
    ELEMENTS,
    IMPLICIT,
    AnnotatedSentence,
    Quad,
    Sentiment,
    Taxonomy,
    mismatch_vector,
)
from .synth import DEFAULT_CONFIG, PerturbationUnavailable, candidate_mentions, perturb_quad

_GEN_STREAM = 1
_COR_STREAM = 2


@dataclass(frozen=True)
class ChannelConfig:
    eps_aspect: float = 0.0
    eps_category: float = 0.0
    eps_opinion: float = 0.0
    eps_sentiment: float = 0.0
    drop: float = 0.0
    insert: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name in ("eps_aspect", "eps_category", "eps_opinion", "eps_sentiment",
                     "drop", "insert"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")

    @classmethod
    def uniform(cls, eps: float, drop: float = 0.0, insert: float = 0.0, seed: int = 0):
        return cls(eps, eps, eps, eps, drop, insert, seed)

    def rate(self, element: str) -> float:
        return getattr(self, f"eps_{element}")


@dataclass
class ChannelLog:
    """What the channel drew: per element, quads seen, draws under the rate, and edits made."""

    trials: Counter = field(default_factory=Counter)
    drawn: Counter = field(default_factory=Counter)
    applied: Counter = field(default_factory=Counter)
    dropped: int = 0
    inserted: int = 0

    def rate(self, element: str) -> float:
        return self.applied[element] / self.trials[element] if self.trials[element] else 0.0


def _spurious_quad(sentence: str, rng: np.random.Generator, taxonomy: Taxonomy) -> Optional[Quad]:
    spans = candidate_mentions(sentence, (), "aspect", IMPLICIT, DEFAULT_CONFIG.max_span_len)
    if not spans:
        return None
    aspect = spans[int(rng.integers(len(spans)))]
    opinion = spans[int(rng.integers(len(spans)))]
    category = taxonomy.labels[int(rng.integers(len(taxonomy)))]
    sentiment = list(Sentiment)[int(rng.integers(3))]
    return Quad(aspect, category, opinion, sentiment)


def simulate_generator(ex: AnnotatedSentence, cfg: ChannelConfig, index: int = 0,
                       log: Optional[ChannelLog] = None,
                       taxonomy: Taxonomy = DEFAULT_TAXONOMY) -> list[Quad]:
    rng = np.random.default_rng([cfg.seed, index, _GEN_STREAM])
    log = log if log is not None else ChannelLog()
    draft = []
    for q in ex.quads:
        if rng.random() < cfg.drop:
            log.dropped += 1
            continue
        for element in ELEMENTS:
            log.trials[element] += 1
            if rng.random() >= cfg.rate(element):
                continue
            log.drawn[element] += 1
            try:
                q = perturb_quad(q, element, ex.text, ex.quads, rng, DEFAULT_CONFIG, taxonomy)
            except PerturbationUnavailable:
                continue
            log.applied[element] += 1
        draft.append(q)
    if rng.random() < cfg.insert:
        extra = _spurious_quad(ex.text, rng, taxonomy)
        if extra is not None:
            log.inserted += 1
            draft.append(extra)
    return draft


def simulate_corrector(draft: Sequence[Quad], gold: Sequence[Quad], fix_prob: float,
                       seed: int = 0, index: int = 0) -> list[Quad]:
    """Oracle repair of ``draft`` towards ``gold``.

    One uniform draw is consumed per repairable item whatever ``fix_prob`` is,
    so for a fixed seed the set of repairs only grows with ``fix_prob``.
    """
    if not 0.0 <= fix_prob <= 1.0:
        raise ValueError(f"fix_prob must be in [0, 1], got {fix_prob}")
    rng = np.random.default_rng([seed, index, _COR_STREAM])
    al = align_canonical(draft, gold)
    match = dict(al.pairs)
    out = []
    for i, q in enumerate(draft):
        if i in match:
            g = gold[match[i]]
            changes = {}
            for element, wrong in zip(ELEMENTS, mismatch_vector(q, g)):
                if wrong and rng.random() < fix_prob:
                    changes[element] = getattr(g, element)
            out.append(q.replace(**changes) if changes else q)
        elif not rng.random() < fix_prob:
            out.append(q)
    for j in al.unmatched_gold:
        if rng.random() < fix_prob:
            out.append(gold[j])
    return out


@dataclass
class SimResult:
    stage1: EvalReport
    stage2: EvalReport
    migration: MigrationReport
    channel: ChannelLog
    drafts: list
    corrected: list


def run_pipeline_sim(corpus: Sequence[AnnotatedSentence], channel: ChannelConfig,
                     fix_prob: float, corrector_seed: Optional[int] = None,
                     taxonomy: Taxonomy = DEFAULT_TAXONOMY) -> SimResult:
    seed = channel.seed if corrector_seed is None else corrector_seed
    log = ChannelLog()
    golds = [list(ex.quads) for ex in corpus]
    drafts = [simulate_generator(ex, channel, i, log, taxonomy) for i, ex in enumerate(corpus)]
    corrected = [simulate_corrector(d, g, fix_prob, seed, i)
                 for i, (d, g) in enumerate(zip(drafts, golds))]
    return SimResult(
        score_lists(drafts, golds),
        score_lists(corrected, golds),
        migration_matrix(drafts, corrected, golds),
        log,
        drafts,
        corrected,
    )
