"""Core quad types, the restaurant category taxonomy and canonical comparison."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence, Union

SSEP = "[SSEP]"
SENTSEP = "[SENTSEP]"
GOLD_SEP = "####"
RESERVED = (SSEP, SENTSEP, GOLD_SEP)

ELEMENTS = ("aspect", "category", "opinion", "sentiment")

DEFAULT_CATEGORIES = (
    "location general",
    "food prices",
    "food quality",
    "food general",
    "ambience general",
    "service general",
    "restaurant prices",
    "drinks prices",
    "restaurant miscellaneous",
    "drinks quality",
    "drinks style_options",
    "restaurant general",
    "food style_options",
)

_WS = re.compile(r"\s+")


def canonicalize_term(text: str) -> str:
    """Strip and collapse internal whitespace runs. Case is preserved."""
    return _WS.sub(" ", text).strip()


class Implicit(Enum):
    IMPLICIT = "IMPLICIT"

    def __repr__(self) -> str:
        return "IMPLICIT"


IMPLICIT = Implicit.IMPLICIT

Aspect = Union[str, Implicit]


class Sentiment(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"

    @property
    def surface(self) -> str:
        return _TO_SURFACE[self]

    @classmethod
    def from_surface(cls, token: str) -> "Sentiment":
        try:
            return _FROM_SURFACE[token]
        except KeyError:
            raise ValueError(f"unknown sentiment token {token!r}") from None

    @classmethod
    def parse(cls, word: str) -> "Sentiment":
        """Accept either the internal name or the surface token."""
        word = word.strip()
        if word in _FROM_SURFACE:
            return _FROM_SURFACE[word]
        return cls(word)

    def __str__(self) -> str:
        return self.value


_TO_SURFACE = {
    Sentiment.POSITIVE: "great",
    Sentiment.NEGATIVE: "bad",
    Sentiment.NEUTRAL: "ok",
}
_FROM_SURFACE = {v: k for k, v in _TO_SURFACE.items()}
SURFACE_TOKENS = tuple(_FROM_SURFACE)


@dataclass(frozen=True)
class Taxonomy:
    labels: tuple[str, ...] = DEFAULT_CATEGORIES
    _index: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        canon = tuple(canonicalize_term(lab) for lab in self.labels)
        if any(not lab for lab in canon):
            raise ValueError("empty category label")
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate category labels after canonicalization")
        object.__setattr__(self, "labels", canon)
        object.__setattr__(self, "_index", frozenset(canon))

    def __contains__(self, label: object) -> bool:
        return isinstance(label, str) and canonicalize_term(label) in self._index

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    @classmethod
    def from_file(cls, path) -> "Taxonomy":
        with open(path, encoding="utf-8") as fh:
            return cls(tuple(line.strip() for line in fh if line.strip()))


DEFAULT_TAXONOMY = Taxonomy()


@dataclass(frozen=True)
class Quad:
    aspect: Aspect
    category: str
    opinion: str
    sentiment: Sentiment

    @classmethod
    def make(cls, aspect, category, opinion, sentiment) -> "Quad":
        """Build a canonicalized quad. ``aspect=None`` or ``IMPLICIT`` means implicit."""
        if aspect is None or aspect is IMPLICIT:
            aspect = IMPLICIT
        else:
            aspect = canonicalize_term(aspect)
        if not isinstance(sentiment, Sentiment):
            sentiment = Sentiment.parse(sentiment)
        return cls(aspect, canonicalize_term(category), canonicalize_term(opinion), sentiment)

    def replace(self, **changes) -> "Quad":
        values = {name: getattr(self, name) for name in ELEMENTS}
        values.update(changes)
        return Quad(**values)

    def key(self) -> tuple:
        """Hashable canonical form; equal keys iff ``quad_equal``."""
        aspect = self.aspect if self.aspect is IMPLICIT else canonicalize_term(self.aspect)
        return (
            aspect,
            canonicalize_term(self.category),
            canonicalize_term(self.opinion),
            self.sentiment,
        )

    def as_list(self) -> list:
        """JSON-friendly ``[aspect|None, category, opinion, sentiment]``."""
        aspect = None if self.aspect is IMPLICIT else self.aspect
        return [aspect, self.category, self.opinion, self.sentiment.value]

    @classmethod
    def from_list(cls, values: Sequence) -> "Quad":
        aspect, category, opinion, sentiment = values
        return cls.make(aspect, category, opinion, sentiment)


@dataclass(frozen=True)
class AnnotatedSentence:
    text: str
    quads: tuple[Quad, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "quads", tuple(self.quads))


def validate_quad(q: Quad, taxonomy: Taxonomy = DEFAULT_TAXONOMY) -> list[str]:
    """Return the list of invariant violations; empty means valid."""
    problems = []
    if not isinstance(q.category, str) or q.category not in taxonomy:
        problems.append("unknown-category")
    if q.aspect is not IMPLICIT:
        if not isinstance(q.aspect, str) or not canonicalize_term(q.aspect):
            problems.append("empty-aspect")
    if not isinstance(q.opinion, str) or not canonicalize_term(q.opinion):
        problems.append("empty-opinion")
    if not isinstance(q.sentiment, Sentiment):
        problems.append("bad-sentiment")
    texts = [q.category, q.opinion]
    if q.aspect is not IMPLICIT:
        texts.append(q.aspect)
    if any(isinstance(t, str) and has_reserved(t) for t in texts):
        problems.append("reserved-substring")
    return problems


def has_reserved(text: str) -> bool:
    return any(tok in text for tok in RESERVED)


def quad_equal(a: Quad, b: Quad) -> bool:
    return a.key() == b.key()


def mismatch_vector(p: Quad, g: Quad) -> tuple[bool, bool, bool, bool]:
    """Per-element disagreement in ``ELEMENTS`` order."""
    pk, gk = p.key(), g.key()
    return tuple(x != y for x, y in zip(pk, gk))


def quads_equal(a: Iterable[Quad], b: Iterable[Quad]) -> bool:
    """Element-wise equality of two quad lists, order and length included."""
    a, b = list(a), list(b)
    return len(a) == len(b) and all(quad_equal(x, y) for x, y in zip(a, b))
