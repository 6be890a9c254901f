"""Corpus readers and writers.

Three on-disk shapes are handled:

* legacy gold lines, ``sentence####[['sushi', 'food quality', 'positive', 'fresh']]``
* canonical JSON-lines records (one example per line, explicit fields)
* the corrector interchange line, ``sentence [SENTSEP] draft #### gold``, whose
  weight and provenance live in a JSON-lines sidecar keyed by line number
"""

from __future__ import annotations

import ast
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from .codec import parse_quads, serialize_quads
from .quads import (
    DEFAULT_TAXONOMY,
    ELEMENTS,
    GOLD_SEP,
    IMPLICIT,
    SENTSEP,
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

DEFAULT_ORDER = ("aspect", "category", "sentiment", "opinion")

PROVENANCES = (
    "identity",
    "category-error",
    "aspect-error",
    "sentiment-error",
    "opinion-error",
    "random-error",
    "model-draft",
)


class CorpusFormatError(ValueError):
    """A single line could not be read; ``reason`` is a short machine tag."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


@dataclass(frozen=True)
class LineReject:
    line_no: int
    reason: str
    text: str


@dataclass(frozen=True)
class CorrectorExample:
    sentence: str
    draft: tuple[Quad, ...]
    gold: tuple[Quad, ...]
    weight: float = 1.0
    provenance: str = "model-draft"

    def __post_init__(self):
        object.__setattr__(self, "draft", tuple(self.draft))
        object.__setattr__(self, "gold", tuple(self.gold))
        if not self.weight > 0:
            raise ValueError(f"weight must be positive, got {self.weight}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.provenance == "identity" and not quads_equal(self.draft, self.gold):
            raise ValueError("identity example whose draft differs from gold")

    @property
    def is_identity(self) -> bool:
        return self.provenance == "identity"


@dataclass
class SplitStats:
    name: str
    n_examples: int = 0
    n_quads: int = 0
    n_implicit: int = 0
    categories: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "examples": self.n_examples,
            "quads": self.n_quads,
            "implicit_aspects": self.n_implicit,
            "categories": dict(self.categories),
        }


# -- legacy format -----------------------------------------------------------

def import_legacy_line(line: str, order: Sequence[str] = DEFAULT_ORDER,
                       taxonomy: Taxonomy = DEFAULT_TAXONOMY,
                       lowercase: bool = False) -> AnnotatedSentence:
    if sorted(order) != sorted(ELEMENTS):
        raise ValueError(f"element order must be a permutation of {ELEMENTS}")
    sentence, sep, payload = line.rstrip("\n").partition(GOLD_SEP)
    if not sep:
        raise CorpusFormatError("missing-separator", "no '####' in line")
    sentence = sentence.strip()
    if lowercase:
        sentence, payload = sentence.lower(), payload.lower()
    try:
        tuples = ast.literal_eval(payload.strip())
    except (ValueError, SyntaxError, MemoryError, RecursionError):
        raise CorpusFormatError("malformed-brackets", payload.strip()[:80]) from None
    if not isinstance(tuples, (list, tuple)):
        raise CorpusFormatError("malformed-brackets", "annotation is not a list")

    quads = []
    for tup in tuples:
        if not isinstance(tup, (list, tuple)) or not all(isinstance(x, str) for x in tup):
            raise CorpusFormatError("malformed-brackets", repr(tup)[:80])
        if len(tup) != 4:
            raise CorpusFormatError("wrong-arity", f"{len(tup)} fields in {tup!r}")
        fields = dict(zip(order, tup))
        try:
            sentiment = Sentiment.parse(fields["sentiment"])
        except ValueError:
            raise CorpusFormatError("unknown-sentiment", fields["sentiment"]) from None
        aspect = fields["aspect"].strip()
        quad = Quad.make(None if aspect == "NULL" else aspect,
                         fields["category"], fields["opinion"], sentiment)
        problems = validate_quad(quad, taxonomy)
        if "unknown-category" in problems:
            raise CorpusFormatError("unknown-category", quad.category)
        if problems:
            raise CorpusFormatError(problems[0], repr(tup))
        quads.append(quad)
    return AnnotatedSentence(sentence, tuple(quads))


def export_legacy_line(ex: AnnotatedSentence, order: Sequence[str] = DEFAULT_ORDER) -> str:
    tuples = []
    for q in ex.quads:
        values = {
            "aspect": "NULL" if q.aspect is IMPLICIT else q.aspect,
            "category": q.category,
            "sentiment": q.sentiment.value,
            "opinion": q.opinion,
        }
        tuples.append([values[name] for name in order])
    return f"{ex.text}{GOLD_SEP}{tuples!r}"


def read_legacy_lines(lines: Iterable[str], order=DEFAULT_ORDER, taxonomy=DEFAULT_TAXONOMY,
                      lowercase=False):
    """Import non-blank lines; returns ``(sentences, rejects)``."""
    corpus, rejects = [], []
    for no, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            corpus.append(import_legacy_line(line, order, taxonomy, lowercase))
        except CorpusFormatError as exc:
            rejects.append(LineReject(no, exc.reason, line.rstrip("\n")))
    return corpus, rejects


def read_legacy_file(path, order=DEFAULT_ORDER, taxonomy=DEFAULT_TAXONOMY, lowercase=False):
    with open(path, encoding="utf-8") as fh:
        return read_legacy_lines(fh, order, taxonomy, lowercase)


# -- canonical records -------------------------------------------------------

def sentence_record(ex: AnnotatedSentence) -> dict:
    return {"text": ex.text, "quads": [q.as_list() for q in ex.quads]}


def sentence_from_record(rec: dict) -> AnnotatedSentence:
    return AnnotatedSentence(rec["text"], tuple(Quad.from_list(q) for q in rec["quads"]))


def corrector_record(ex: CorrectorExample) -> dict:
    return {
        "sentence": ex.sentence,
        "draft": [q.as_list() for q in ex.draft],
        "gold": [q.as_list() for q in ex.gold],
        "weight": ex.weight,
        "provenance": ex.provenance,
    }


def corrector_from_record(rec: dict) -> CorrectorExample:
    return CorrectorExample(
        rec["sentence"],
        tuple(Quad.from_list(q) for q in rec["draft"]),
        tuple(Quad.from_list(q) for q in rec["gold"]),
        float(rec.get("weight", 1.0)),
        rec.get("provenance", "model-draft"),
    )


def write_jsonl(path, records: Iterable[dict]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
            n += 1
    return n


def iter_jsonl(path) -> Iterator[dict]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield json.loads(line)


def write_sentences(path, corpus: Iterable[AnnotatedSentence]) -> int:
    return write_jsonl(path, (sentence_record(ex) for ex in corpus))


def read_sentences(path) -> list[AnnotatedSentence]:
    return [sentence_from_record(rec) for rec in iter_jsonl(path)]


# -- corrector interchange ---------------------------------------------------

def write_corrector_line(ex: CorrectorExample, taxonomy: Taxonomy = DEFAULT_TAXONOMY) -> str:
    if has_reserved(ex.sentence):
        raise ValueError(f"sentence contains a reserved separator: {ex.sentence!r}")
    draft = serialize_quads(ex.draft, taxonomy)
    gold = serialize_quads(ex.gold, taxonomy)
    return f"{ex.sentence} {SENTSEP} {draft} {GOLD_SEP} {gold}"


def read_corrector_line(line: str, taxonomy: Taxonomy = DEFAULT_TAXONOMY,
                        weight: float = 1.0, provenance: str = "model-draft") -> CorrectorExample:
    line = line.rstrip("\n")
    sentence, sep, rest = line.partition(SENTSEP)
    if not sep:
        raise CorpusFormatError("missing-sentsep", line[:80])
    draft_text, sep, gold_text = rest.partition(GOLD_SEP)
    if not sep:
        raise CorpusFormatError("missing-separator", line[:80])
    draft, ddiag = parse_quads(draft_text, taxonomy)
    gold, gdiag = parse_quads(gold_text, taxonomy)
    if gdiag.rejects:
        raise CorpusFormatError("unparseable-gold", gdiag.rejects[0].reason)
    if ddiag.rejects:
        raise CorpusFormatError("unparseable-draft", ddiag.rejects[0].reason)
    return CorrectorExample(canonicalize_term(sentence), tuple(draft), tuple(gold),
                            weight, provenance)


def write_corrector_corpus(examples: Sequence[CorrectorExample], text_path, meta_path=None,
                           taxonomy: Taxonomy = DEFAULT_TAXONOMY) -> int:
    """Write interchange lines plus the weight/provenance sidecar."""
    with open(text_path, "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(write_corrector_line(ex, taxonomy) + "\n")
    if meta_path is not None:
        write_jsonl(meta_path, ({"line": i, "weight": ex.weight, "provenance": ex.provenance}
                                for i, ex in enumerate(examples, 1)))
    return len(examples)


def read_corrector_corpus(text_path, meta_path=None, taxonomy: Taxonomy = DEFAULT_TAXONOMY):
    """Returns ``(examples, rejects)``. Without a sidecar, weights default to 1."""
    meta = {}
    if meta_path is not None and Path(meta_path).exists():
        meta = {rec["line"]: rec for rec in iter_jsonl(meta_path)}
    examples, rejects = [], []
    with open(text_path, encoding="utf-8") as fh:
        for no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            m = meta.get(no, {})
            try:
                examples.append(read_corrector_line(
                    line, taxonomy, float(m.get("weight", 1.0)),
                    m.get("provenance", "model-draft")))
            except (CorpusFormatError, ValueError) as exc:
                reason = getattr(exc, "reason", "invalid-example")
                rejects.append(LineReject(no, reason, line.rstrip("\n")))
    return examples, rejects


# -- prediction files ---------------------------------------------------------

def read_quad_lists(path, fmt: str = "auto", taxonomy: Taxonomy = DEFAULT_TAXONOMY,
                    order=DEFAULT_ORDER) -> list[list[Quad]]:
    """Load one quad list per example.

    ``linear`` files hold one serialized quad string per line and every line
    counts, blank ones included (an empty prediction). ``legacy`` and ``jsonl``
    skip blank lines; legacy lines that fail to import raise.
    """
    path = Path(path)
    if fmt == "auto":
        fmt = detect_format(path)
    if fmt == "jsonl":
        out = []
        for rec in iter_jsonl(path):
            quads = rec["quads"] if "quads" in rec else rec["draft"]
            out.append([Quad.from_list(q) for q in quads])
        return out
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    if fmt == "legacy":
        out = []
        for no, line in enumerate(lines, 1):
            if not line.strip():
                continue
            try:
                out.append(list(import_legacy_line(line, order, taxonomy).quads))
            except CorpusFormatError as exc:
                raise CorpusFormatError(exc.reason, f"{path}:{no}") from None
        return out
    if fmt == "linear":
        out = []
        for line in lines:
            if SENTSEP in line:
                line = line.partition(SENTSEP)[2]
            quads, diag = parse_quads(line.partition(GOLD_SEP)[0], taxonomy)
            if diag.rejects:
                log.debug("%s: %d unparseable segments skipped", path, len(diag.rejects))
            out.append(quads)
        return out
    raise ValueError(f"unknown format {fmt!r}")


def detect_format(path: Path) -> str:
    if path.suffix == ".jsonl":
        return "jsonl"
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                if GOLD_SEP in line and SENTSEP not in line:
                    return "legacy"
                break
    return "linear"


def dataset_stats(corpus: Iterable[AnnotatedSentence], name: str = "") -> SplitStats:
    stats = SplitStats(name)
    hist = Counter()
    for ex in corpus:
        stats.n_examples += 1
        stats.n_quads += len(ex.quads)
        stats.n_implicit += sum(q.aspect is IMPLICIT for q in ex.quads)
        hist.update(q.category for q in ex.quads)
    stats.categories = dict(sorted(hist.items()))
    return stats
