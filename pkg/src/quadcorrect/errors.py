"""Draft-vs-gold error analysis.

Predictions are aligned to gold quads by an optimal one-to-one assignment on
the number of mismatching elements. Matched pairs are then classed as exact,
single-element (by element) or multi-element; leftovers are spurious (pred
side) or missing (gold side). A pair sharing no element at all is not kept as
a match.

Stage-to-stage migration is tallied on gold quads, so the same gold quad can
be followed from a first-pass draft to its corrected version.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .assignment import rectangular_assignment
from .quads import ELEMENTS, IMPLICIT, Quad, mismatch_vector

MAX_ALIGN = 64

EXACT = "exact"
MULTI = "multi-element"
SPURIOUS = "spurious"
MISSING = "missing"
SINGLE = tuple(f"single-{e}" for e in ELEMENTS)
CLASSES = (EXACT,) + SINGLE + (MULTI, SPURIOUS, MISSING)
SLOT_CLASSES = (EXACT,) + SINGLE + (MULTI, MISSING)


def mismatch_cost(p: Quad, g: Quad) -> int:
    return sum(mismatch_vector(p, g))


def class_of(vector: Sequence[bool]) -> str:
    n = sum(vector)
    if n == 0:
        return EXACT
    if n == 1:
        return f"single-{ELEMENTS[list(vector).index(True)]}"
    return MULTI


@dataclass(frozen=True)
class Alignment:
    pairs: tuple[tuple[int, int], ...]
    unmatched_pred: tuple[int, ...]
    unmatched_gold: tuple[int, ...]
    total_cost: int


def align_quads(pred: Sequence[Quad], gold: Sequence[Quad], max_size: int = MAX_ALIGN) -> Alignment:
    """Minimum total mismatch assignment between ``pred`` and ``gold``.

    ``total_cost`` is the optimum over all ``min(len)`` pairs; pairs costing 4
    are removed from ``pairs`` afterwards and reported as unmatched on both
    sides. Ties go to the lexicographically smallest gold index per pred.
    """
    if len(pred) > max_size or len(gold) > max_size:
        raise ValueError(f"alignment size {len(pred)}x{len(gold)} exceeds bound {max_size}")
    cost = [[mismatch_cost(p, g) for g in gold] for p in pred]
    raw = rectangular_assignment(cost, len(gold))
    total = sum(cost[i][j] for i, j in raw)
    pairs = tuple((i, j) for i, j in raw if cost[i][j] < len(ELEMENTS))
    hit_p = {i for i, _ in pairs}
    hit_g = {j for _, j in pairs}
    return Alignment(
        pairs,
        tuple(i for i in range(len(pred)) if i not in hit_p),
        tuple(j for j in range(len(gold)) if j not in hit_g),
        total,
    )


def _sort_key(q: Quad):
    aspect = "" if q.aspect is IMPLICIT else q.aspect
    return (q.aspect is IMPLICIT, aspect, q.category, q.opinion, q.sentiment.value)


def align_canonical(pred: Sequence[Quad], gold: Sequence[Quad],
                    max_size: int = MAX_ALIGN) -> Alignment:
    """``align_quads`` with predictions visited in content order.

    The result (in original indices) does not depend on the order in which
    predictions were emitted.
    """
    order = sorted(range(len(pred)), key=lambda i: _sort_key(pred[i]))
    al = align_quads([pred[i] for i in order], gold, max_size)
    return Alignment(
        tuple(sorted((order[i], j) for i, j in al.pairs)),
        tuple(sorted(order[i] for i in al.unmatched_pred)),
        al.unmatched_gold,
        al.total_cost,
    )


@dataclass(frozen=True)
class ErrorRecord:
    example: int
    pred_index: Optional[int]
    gold_index: Optional[int]
    mismatch: Optional[tuple[bool, bool, bool, bool]]
    cls: str

    @property
    def is_error(self) -> bool:
        return self.cls != EXACT


@dataclass
class ErrorSummary:
    counts: Counter = field(default_factory=Counter)
    records: list = field(default_factory=list)

    @property
    def n_errors(self) -> int:
        return sum(v for k, v in self.counts.items() if k != EXACT)

    @property
    def single_element(self) -> int:
        return sum(self.counts[c] for c in SINGLE)

    def as_dict(self) -> dict:
        return {
            "counts": {c: self.counts.get(c, 0) for c in CLASSES},
            "errors": self.n_errors,
            "single_element_errors": self.single_element,
        }


def example_records(example: int, pred: Sequence[Quad], gold: Sequence[Quad]) -> list[ErrorRecord]:
    al = align_canonical(pred, gold)
    out = []
    for i, j in al.pairs:
        vec = mismatch_vector(pred[i], gold[j])
        out.append(ErrorRecord(example, i, j, vec, class_of(vec)))
    out.extend(ErrorRecord(example, i, None, None, SPURIOUS) for i in al.unmatched_pred)
    out.extend(ErrorRecord(example, None, j, None, MISSING) for j in al.unmatched_gold)
    return out


def classify_errors(pairs) -> ErrorSummary:
    """Align every ``(pred, gold)`` example and tally records by class."""
    summary = ErrorSummary()
    for k, (pred, gold) in enumerate(pairs):
        recs = example_records(k, pred, gold)
        summary.records.extend(recs)
        summary.counts.update(r.cls for r in recs)
    return summary


def gold_slots(pred: Sequence[Quad], gold: Sequence[Quad]) -> list[str]:
    """Status of each gold quad: exact, single-<element>, multi-element or missing."""
    status = [MISSING] * len(gold)
    al = align_canonical(pred, gold)
    for i, j in al.pairs:
        status[j] = class_of(mismatch_vector(pred[i], gold[j]))
    return status


@dataclass
class MigrationReport:
    stage1: Counter
    stage2: Counter
    slots1: Counter
    slots2: Counter
    transitions: Counter
    compression: int
    regression: int

    def matrix(self) -> list[list[int]]:
        return [[self.transitions.get((a, b), 0) for b in SLOT_CLASSES] for a in SLOT_CLASSES]

    def as_dict(self) -> dict:
        return {
            "classes": list(SLOT_CLASSES),
            "stage1": {c: self.stage1.get(c, 0) for c in CLASSES},
            "stage2": {c: self.stage2.get(c, 0) for c in CLASSES},
            "gold_slots_stage1": {c: self.slots1.get(c, 0) for c in SLOT_CLASSES},
            "gold_slots_stage2": {c: self.slots2.get(c, 0) for c in SLOT_CLASSES},
            "transitions": self.matrix(),
            "compression": self.compression,
            "regression": self.regression,
        }


def migration_matrix(stage1: Sequence[Sequence[Quad]], stage2: Sequence[Sequence[Quad]],
                     golds: Sequence[Sequence[Quad]]) -> MigrationReport:
    if not len(stage1) == len(stage2) == len(golds):
        raise ValueError(
            f"stage sizes differ: stage1={len(stage1)} stage2={len(stage2)} gold={len(golds)}")
    s1 = classify_errors(zip(stage1, golds)).counts
    s2 = classify_errors(zip(stage2, golds)).counts
    slots1, slots2, trans = Counter(), Counter(), Counter()
    for p1, p2, g in zip(stage1, stage2, golds):
        for a, b in zip(gold_slots(p1, g), gold_slots(p2, g)):
            slots1[a] += 1
            slots2[b] += 1
            trans[(a, b)] += 1
    compression = sum(v for (a, b), v in trans.items() if a == MULTI and b in SINGLE)
    regression = sum(v for (a, b), v in trans.items() if a == EXACT and b != EXACT)
    return MigrationReport(s1, s2, slots1, slots2, trans, compression, regression)


def bar_chart_rows(report: MigrationReport) -> list[dict]:
    """Per-class stage counts in a flat shape suitable for CSV plotting."""
    return [{"class": c, "stage1": report.stage1.get(c, 0), "stage2": report.stage2.get(c, 0)}
            for c in CLASSES if c != EXACT]
