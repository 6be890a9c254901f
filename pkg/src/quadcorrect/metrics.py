"""Quad-level exact-match precision, recall and F1 (micro-averaged)."""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .quads import Quad


class LengthMismatch(ValueError):
    def __init__(self, n_pred: int, n_gold: int):
        self.n_pred, self.n_gold = n_pred, n_gold
        super().__init__(f"prediction count {n_pred} does not match gold count {n_gold}")


@dataclass(frozen=True)
class EvalReport:
    tp: int
    n_pred: int
    n_gold: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, tp: int, n_pred: int, n_gold: int) -> "EvalReport":
        p = tp / n_pred if n_pred else 0.0
        r = tp / n_gold if n_gold else 0.0
        f1 = 2 * p * r / (p + r) if p + r else 0.0
        return cls(tp, n_pred, n_gold, p, r, f1)

    def as_dict(self) -> dict:
        return asdict(self)

    def table(self, name: str = "") -> str:
        head = f"{'':<10}{'Pre':>8}{'Rec':>8}{'F1':>8}"
        row = (f"{name:<10}{100 * self.precision:>8.2f}{100 * self.recall:>8.2f}"
               f"{100 * self.f1:>8.2f}")
        return f"{head}\n{row}"


def score_example(pred: Iterable[Quad], gold: Iterable[Quad], multiset: bool = False):
    """``(tp, n_pred, n_gold)`` under exact match on all four elements.

    Each side is deduplicated first unless ``multiset`` is set.
    """
    p = Counter(q.key() for q in pred)
    g = Counter(q.key() for q in gold)
    if not multiset:
        p = Counter(set(p))
        g = Counter(set(g))
    tp = sum((p & g).values())
    return tp, sum(p.values()), sum(g.values())


def score_corpus(pairs: Iterable[tuple[Sequence[Quad], Sequence[Quad]]],
                 multiset: bool = False) -> EvalReport:
    tp = n_pred = n_gold = 0
    for pred, gold in pairs:
        a, b, c = score_example(pred, gold, multiset)
        tp += a
        n_pred += b
        n_gold += c
    return EvalReport.from_counts(tp, n_pred, n_gold)


def score_lists(preds: Sequence[Sequence[Quad]], golds: Sequence[Sequence[Quad]],
                multiset: bool = False) -> EvalReport:
    if len(preds) != len(golds):
        raise LengthMismatch(len(preds), len(golds))
    return score_corpus(zip(preds, golds), multiset)
