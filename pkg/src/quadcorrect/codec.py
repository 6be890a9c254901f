"""Linearization of quad sets into "<c> is <s> because <a> is <o>" text and back.

Parsing is lenient: model drafts are arbitrary strings, so every ``[SSEP]``
segment is either turned into a quad or recorded with a rejection reason.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .quads import (
    DEFAULT_TAXONOMY,
    IMPLICIT,
    SENTSEP,
    SSEP,
    Quad,
    Sentiment,
    Taxonomy,
    canonicalize_term,
    has_reserved,
    validate_quad,
)

IMPLICIT_SURFACE = "it"

UNKNOWN_CATEGORY = "unknown-category"
BAD_SENTIMENT = "bad-sentiment-token"
MISSING_DELIMITER = "missing-delimiter"
EMPTY_FIELD = "empty-field"


class QuadValidationError(ValueError):
    def __init__(self, quad, violations):
        self.quad = quad
        self.violations = list(violations)
        super().__init__(f"invalid quad {quad!r}: {', '.join(self.violations)}")


@dataclass(frozen=True)
class SegmentOutcome:
    index: int
    raw: str
    quad: Optional[Quad] = None
    reason: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.quad is not None


@dataclass(frozen=True)
class ParseDiagnostics:
    outcomes: tuple[SegmentOutcome, ...] = ()

    @property
    def rejects(self) -> list[SegmentOutcome]:
        return [o for o in self.outcomes if not o.ok]

    def __len__(self) -> int:
        return len(self.outcomes)


def render_quad(q: Quad) -> str:
    aspect = IMPLICIT_SURFACE if q.aspect is IMPLICIT else canonicalize_term(q.aspect)
    return (
        f"{canonicalize_term(q.category)} is {q.sentiment.surface} "
        f"because {aspect} is {canonicalize_term(q.opinion)}"
    )


def serialize_quads(quads: Iterable[Quad], taxonomy: Taxonomy = DEFAULT_TAXONOMY) -> str:
    parts = []
    for q in quads:
        problems = validate_quad(q, taxonomy)
        if problems:
            raise QuadValidationError(q, problems)
        parts.append(render_quad(q))
    return f" {SSEP} ".join(parts)


def _labels_longest_first(taxonomy: Taxonomy) -> list[str]:
    return sorted(taxonomy.labels, key=len, reverse=True)


def parse_segment(segment: str, taxonomy: Taxonomy = DEFAULT_TAXONOMY,
                  _labels: Optional[list] = None):
    """Parse one segment into ``(quad, None)`` or ``(None, reason)``."""
    seg = canonicalize_term(segment)
    if not seg:
        return None, EMPTY_FIELD
    labels = _labels if _labels is not None else _labels_longest_first(taxonomy)

    category = None
    prefix_only = False
    for label in labels:
        if seg.startswith(label + " is "):
            category = label
            break
        if seg.startswith(label):
            prefix_only = True
    if category is None:
        return None, MISSING_DELIMITER if prefix_only else UNKNOWN_CATEGORY

    rest = seg[len(category) + 4:]
    token, sep, rest = rest.partition(" because ")
    if not sep:
        return None, MISSING_DELIMITER
    if token not in ("great", "bad", "ok"):
        return None, BAD_SENTIMENT

    aspect, sep, opinion = rest.partition(" is ")
    if not sep:
        return None, MISSING_DELIMITER
    aspect, opinion = aspect.strip(), opinion.strip()
    if not aspect or not opinion:
        return None, EMPTY_FIELD
    return Quad.make(
        None if aspect == IMPLICIT_SURFACE else aspect,
        category,
        opinion,
        Sentiment.from_surface(token),
    ), None


def parse_quads(text: str, taxonomy: Taxonomy = DEFAULT_TAXONOMY):
    """Return ``(quads, diagnostics)``; never raises on string input."""
    if not text or not text.strip():
        return [], ParseDiagnostics()
    labels = _labels_longest_first(taxonomy)
    quads, outcomes = [], []
    for i, raw in enumerate(text.split(SSEP)):
        quad, reason = parse_segment(raw, taxonomy, labels)
        outcomes.append(SegmentOutcome(i, raw, quad, reason))
        if quad is not None:
            quads.append(quad)
    return quads, ParseDiagnostics(tuple(outcomes))


def build_corrector_input(sentence: str, draft: str, prefix: str = "") -> str:
    if has_reserved(sentence):
        raise ValueError(f"sentence contains a reserved separator: {sentence!r}")
    return f"{prefix}{sentence} {SENTSEP} {draft}"
