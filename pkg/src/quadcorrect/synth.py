"""Rule-based synthesis of near-miss drafts for corrector training.

Each training sentence yields five drafts, each differing from gold in exactly
one element of one quad (category, aspect, sentiment, opinion, then one drawn
at random), plus an identity pair. Aspect and opinion replacements are always
spans of the source sentence; category replacements stay inside the taxonomy.
"""

from __future__ import annotations

import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .codec import QuadValidationError, parse_quads, serialize_quads
from .corpus import CorrectorExample
from .quads import (
    DEFAULT_TAXONOMY,
    IMPLICIT,
    AnnotatedSentence,
    Quad,
    Sentiment,
    Taxonomy,
    canonicalize_term,
    has_reserved,
    quads_equal,
    validate_quad,
)

log = logging.getLogger(__name__)

ERROR_ELEMENTS = ("category", "aspect", "sentiment", "opinion")

STOPWORDS = frozenset("""
a an the and or but nor so yet if then than as of at by for from in into on onto to
with without about over under after before during while is am are was were be been
being do does did has have had having it its it's this that these those there here
i me my we us our you your he him his she her they them their what which who whom
whose when where why how not no very too just also only even still all any both each
few more most other some such own same can will would should could may might must
s t don't didn't isn't wasn't aren't weren't
""".split())

_TOKEN = re.compile(r"\w+(?:['’-]\w+)*")


class PerturbationUnavailable(Exception):
    def __init__(self, element: str, reason: str):
        self.element = element
        self.reason = reason
        super().__init__(f"{element}: {reason}")


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 0
    w_cor: float = 1.0
    w_err: float = 1.0
    max_span_len: int = 3
    identity: bool = True
    max_retries: int = 8
    stopwords: frozenset = STOPWORDS

    def __post_init__(self):
        if self.w_cor <= 0 or self.w_err <= 0:
            raise ValueError("weights must be positive")
        if self.max_span_len < 1:
            raise ValueError("max_span_len must be >= 1")


DEFAULT_CONFIG = SynthConfig()


@dataclass(frozen=True)
class SynthReport:
    example: int
    slot: int
    element: str
    reason: str


def example_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _usable_span(term: str) -> bool:
    # a span containing " is " would not survive the template's aspect/opinion split
    return bool(term) and " is " not in f" {term} " and term != "it" and not has_reserved(term)


def candidate_mentions(sentence: str, gold: Sequence[Quad], element: str, original,
                       max_len: int = 3, stopwords=STOPWORDS) -> list[str]:
    """In-sentence replacement candidates for an aspect or opinion term.

    Other gold terms of the same kind come first (they produce mispairings),
    then content n-grams up to ``max_len`` tokens that start and end on a
    non-stopword. Within a tier, candidates are ordered by first occurrence.
    """
    if element not in ("aspect", "opinion"):
        raise ValueError(f"span candidates exist only for aspect/opinion, not {element!r}")
    original = original if original is IMPLICIT else canonicalize_term(original)

    tier1 = []
    for q in gold:
        term = getattr(q, element)
        if term is IMPLICIT or term == original or not _usable_span(term):
            continue
        pos = sentence.find(term)
        if pos >= 0:
            tier1.append((pos, len(term), term))
    tier1.sort()

    tokens = [(m.start(), m.end(), m.group()) for m in _TOKEN.finditer(sentence)]
    tier2 = []
    for i, (start, _, first) in enumerate(tokens):
        if first.lower() in stopwords:
            continue
        for j in range(i, min(i + max_len, len(tokens))):
            last = tokens[j][2]
            if last.lower() in stopwords:
                continue
            span = sentence[start:tokens[j][1]]
            if span != original and canonicalize_term(span) == span and _usable_span(span):
                tier2.append(span)

    seen, out = set(), []
    for term in [t for _, _, t in tier1] + tier2:
        if term not in seen:
            seen.add(term)
            out.append(term)
    return out


def related_categories(label: str, taxonomy: Taxonomy = DEFAULT_TAXONOMY) -> list[str]:
    """Other labels sharing the entity head (``food ...``) or the attribute (``... prices``)."""
    head, _, attr = canonicalize_term(label).partition(" ")
    out = []
    for other in taxonomy.labels:
        if other == label:
            continue
        o_head, _, o_attr = other.partition(" ")
        if o_head == head or (attr and o_attr == attr):
            out.append(other)
    return out


def _choose(rng: np.random.Generator, options: Sequence):
    return options[int(rng.integers(len(options)))]


def perturb_quad(q: Quad, element: str, sentence: str, gold: Sequence[Quad],
                 rng: np.random.Generator, cfg: SynthConfig = DEFAULT_CONFIG,
                 taxonomy: Taxonomy = DEFAULT_TAXONOMY) -> Quad:
    """Return ``q`` with exactly ``element`` replaced."""
    if element == "category":
        pool = related_categories(q.category, taxonomy)
        if not pool:
            pool = [lab for lab in taxonomy.labels if lab != q.category]
        if not pool:
            raise PerturbationUnavailable(element, "taxonomy has no alternative label")
        return q.replace(category=_choose(rng, pool))
    if element == "sentiment":
        return q.replace(sentiment=_choose(rng, [s for s in Sentiment if s != q.sentiment]))
    if element in ("aspect", "opinion"):
        pool = candidate_mentions(sentence, gold, element, getattr(q, element),
                                  cfg.max_span_len, cfg.stopwords)
        if not pool:
            raise PerturbationUnavailable(element, "no alternative in-sentence mention")
        return q.replace(**{element: _choose(rng, pool)})
    raise ValueError(f"unknown element {element!r}")


def perturb_element(ex: AnnotatedSentence, quad_index: int, element: str,
                    rng: np.random.Generator, cfg: SynthConfig = DEFAULT_CONFIG,
                    taxonomy: Taxonomy = DEFAULT_TAXONOMY) -> CorrectorExample:
    if not 0 <= quad_index < len(ex.quads):
        raise IndexError(f"quad index {quad_index} out of range for {len(ex.quads)} quads")
    new = perturb_quad(ex.quads[quad_index], element, ex.text, ex.quads, rng, cfg, taxonomy)
    draft = list(ex.quads)
    draft[quad_index] = new
    return CorrectorExample(ex.text, tuple(draft), ex.quads, cfg.w_err, f"{element}-error")


def synthesize_drafts(ex: AnnotatedSentence, cfg: SynthConfig = DEFAULT_CONFIG, index: int = 0,
                      taxonomy: Taxonomy = DEFAULT_TAXONOMY):
    """Five single-error drafts plus the identity pair for one sentence.

    Returns ``(examples, reports)``; a report names a draft slot that could not
    be filled (no alternative mention, or no distinct draft within the retry
    budget). The random fifth slot is tagged with the class it actually drew.
    """
    if not ex.quads:
        raise ValueError("cannot synthesize drafts for a sentence without quads")
    rng = example_rng(cfg.seed, index)
    m = len(ex.quads)
    seen = {tuple(q.key() for q in ex.quads)}
    dead: dict[str, set] = {e: set() for e in ERROR_ELEMENTS}
    drafts, reports = [], []

    for slot, fixed in enumerate(ERROR_ELEMENTS + (None,), 1):
        made = None
        collisions = 0
        # unavailable quads are retired without spending the collision budget
        while collisions <= cfg.max_retries:
            live = [e for e in ERROR_ELEMENTS if len(dead[e]) < m]
            element = fixed if fixed is not None else (_choose(rng, live) if live else None)
            if element is None or element not in live:
                break
            open_quads = [i for i in range(m) if i not in dead[element]]
            qi = _choose(rng, open_quads) if len(open_quads) > 1 else open_quads[0]
            try:
                cand = perturb_element(ex, qi, element, rng, cfg, taxonomy)
            except PerturbationUnavailable:
                dead[element].add(qi)
                continue
            key = tuple(q.key() for q in cand.draft)
            if key not in seen:
                seen.add(key)
                made = cand
                break
            collisions += 1
        if made is not None:
            drafts.append(made)
        else:
            element = fixed or "random"
            if fixed is not None and len(dead[fixed]) == m:
                reason = "unavailable"
            elif fixed is None and all(len(d) == m for d in dead.values()):
                reason = "unavailable"
            else:
                reason = "no-distinct-draft"
            reports.append(SynthReport(index, slot, element, reason))

    if cfg.identity:
        drafts.append(CorrectorExample(ex.text, ex.quads, ex.quads, cfg.w_cor, "identity"))
    return drafts, reports


def _synth_chunk(args):
    items, cfg, taxonomy = args
    return [(i, *synthesize_drafts(ex, cfg, i, taxonomy)) for i, ex in items]


def synthesize_corpus(corpus: Sequence[AnnotatedSentence], cfg: SynthConfig = DEFAULT_CONFIG,
                      taxonomy: Taxonomy = DEFAULT_TAXONOMY, jobs: int = 1):
    """Synthesize over a corpus; sentences without quads are reported and skipped.

    Output order follows corpus order regardless of ``jobs``.
    """
    items = [(i, ex) for i, ex in enumerate(corpus)]
    reports = [SynthReport(i, 0, "-", "no-quads") for i, ex in items if not ex.quads]
    items = [(i, ex) for i, ex in items if ex.quads]
    if jobs > 1 and len(items) > 1:
        chunks = [items[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            results = [r for part in pool.map(_synth_chunk, [(c, cfg, taxonomy) for c in chunks])
                       for r in part]
        results.sort(key=lambda r: r[0])
    else:
        results = _synth_chunk((items, cfg, taxonomy))
    examples = []
    for _, exs, reps in results:
        examples.extend(exs)
        reports.extend(reps)
    reports.sort(key=lambda r: (r.example, r.slot))
    return examples, reports


# -- quality control ---------------------------------------------------------

QC_DUPLICATE = "duplicate"
QC_TAXONOMY = "taxonomy"
QC_SPAN = "span-not-in-sentence"
QC_UNPARSEABLE = "unparseable"


def _spans_from_sentence(ex: CorrectorExample) -> bool:
    gold_terms = {
        "aspect": {q.aspect for q in ex.gold},
        "opinion": {q.opinion for q in ex.gold},
    }
    for q in ex.draft:
        for element in ("aspect", "opinion"):
            term = getattr(q, element)
            if term is IMPLICIT or term in gold_terms[element]:
                continue
            if not isinstance(term, str) or term not in ex.sentence:
                return False
    return True


def _round_trips(quads, taxonomy: Taxonomy) -> bool:
    try:
        text = serialize_quads(quads, taxonomy)
    except QuadValidationError:
        return False
    back, diag = parse_quads(text, taxonomy)
    return not diag.rejects and quads_equal(back, quads)


def qc_check(ex: CorrectorExample, taxonomy: Taxonomy = DEFAULT_TAXONOMY) -> Optional[str]:
    """Reason the example fails QC (duplicates aside), or ``None``."""
    if any(q.category not in taxonomy for q in ex.draft):
        return QC_TAXONOMY
    if not ex.is_identity and not _spans_from_sentence(ex):
        return QC_SPAN
    if not _round_trips(ex.draft, taxonomy):
        return QC_UNPARSEABLE
    return None


def qc_filter(examples: Sequence[CorrectorExample], taxonomy: Taxonomy = DEFAULT_TAXONOMY):
    """Returns ``(kept, rejected)`` where ``rejected`` holds ``(example, reason)`` pairs."""
    kept, rejected, seen = [], [], set()
    for ex in examples:
        key = (canonicalize_term(ex.sentence), tuple(q.key() for q in ex.draft))
        if key in seen:
            rejected.append((ex, QC_DUPLICATE))
            continue
        reason = qc_check(ex, taxonomy)
        if reason is not None:
            rejected.append((ex, reason))
            continue
        seen.add(key)
        kept.append(ex)
    return kept, rejected


def drop_identity(examples: Sequence[CorrectorExample]) -> list[CorrectorExample]:
    return [ex for ex in examples if not ex.is_identity]


def validate_corpus(corpus: Sequence[AnnotatedSentence], taxonomy: Taxonomy = DEFAULT_TAXONOMY):
    """Indices of sentences whose gold quads violate the quad invariants."""
    return [i for i, ex in enumerate(corpus)
            if any(validate_quad(q, taxonomy) for q in ex.quads)]
