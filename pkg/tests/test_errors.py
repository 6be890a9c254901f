import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import SUSHI_GOLD, brute_gold_status, brute_min_cost, hamming, quad
from quadcorrect.assignment import hungarian, rectangular_assignment
from quadcorrect.errors import (
    align_canonical,
    align_quads,
    bar_chart_rows,
    classify_errors,
    gold_slots,
    migration_matrix,
    mismatch_cost,
)
from quadcorrect.quads import IMPLICIT, Quad, Sentiment
from quadcorrect.synth import SynthConfig, synthesize_corpus

Q = Quad.make


def test_mismatch_cost():
    g = SUSHI_GOLD[0]
    assert mismatch_cost(g, g) == 0
    assert mismatch_cost(g.replace(category="food general"), g) == 1
    other = Q(None, "service general", "rude", "negative")
    assert mismatch_cost(other, g) == 4


def test_hungarian_small():
    cost = [[4, 1, 3], [2, 0, 5], [3, 2, 2]]
    assign = hungarian(cost)
    assert sum(cost[i][j] for i, j in enumerate(assign)) == 5
    assert hungarian([]) == []
    with pytest.raises(ValueError):
        hungarian([[1, 2]])


def test_rectangular_tie_break_prefers_low_gold_index():
    assert rectangular_assignment([[0, 0], [0, 0]]) == [(0, 0), (1, 1)]
    assert rectangular_assignment([[1, 1, 1]]) == [(0, 0)]
    assert rectangular_assignment([[1], [1], [1]], 1) == [(0, 0)]


def test_align_permutation_is_perfect():
    gold = list(SUSHI_GOLD) + [Q(None, "restaurant general", "great", "positive")]
    pred = [gold[2], gold[0], gold[1]]
    al = align_quads(pred, gold)
    assert al.total_cost == 0
    assert set(al.pairs) == {(0, 2), (1, 0), (2, 1)}


def test_align_empty_sides():
    al = align_quads([], SUSHI_GOLD)
    assert al.pairs == () and al.unmatched_gold == (0, 1)
    al = align_quads(SUSHI_GOLD, [])
    assert al.unmatched_pred == (0, 1)


def test_cost_four_matches_dissolve():
    other = Q("waiter", "service general", "rude", "negative")
    al = align_quads([other], [SUSHI_GOLD[0]])
    assert al.total_cost == 4
    assert al.pairs == () and al.unmatched_pred == (0,) and al.unmatched_gold == (0,)


def test_align_size_bound():
    with pytest.raises(ValueError):
        align_quads([SUSHI_GOLD[0]] * 65, [])
    assert align_quads([SUSHI_GOLD[0]] * 64, [SUSHI_GOLD[0]] * 64).total_cost == 0


def test_crossed_mispairing_resolved_optimally():
    gold = [Q("sushi", "food quality", "fresh", "positive"),
            Q("rice", "food quality", "soggy", "negative")]
    # opinions swapped between the two aspects
    pred = [Q("sushi", "food quality", "soggy", "positive"),
            Q("rice", "food quality", "fresh", "negative")]
    al = align_quads(pred, gold)
    assert al.pairs == ((0, 0), (1, 1))
    s = classify_errors([(pred, gold)])
    assert s.counts["single-opinion"] == 2


def _rand_quad(rng):
    return Q(rng.choice(["sushi", "rice", None]), rng.choice(["food quality", "food prices"]),
             rng.choice(["fresh", "bad"]), rng.choice(list(Sentiment)))


def test_random_3x3_matches_exhaustive():
    rng = random.Random(0)
    for _ in range(200):
        pred = [_rand_quad(rng) for _ in range(3)]
        gold = [_rand_quad(rng) for _ in range(3)]
        cost = [[hamming(p, g) for g in gold] for p in pred]
        assert align_quads(pred, gold).total_cost == brute_min_cost(cost, 3, 3)


sides = st.lists(quad, max_size=5)


@settings(max_examples=200, deadline=None)
@given(sides, sides)
def test_alignment_optimal(pred, gold):
    cost = [[hamming(p, g) for g in gold] for p in pred]
    assert align_quads(pred, gold).total_cost == brute_min_cost(cost, len(pred), len(gold))


@settings(max_examples=200, deadline=None)
@given(sides, sides)
def test_records_account_for_everything(pred, gold):
    s = classify_errors([(pred, gold)])
    al = align_canonical(pred, gold)
    assert len(s.records) == len(al.pairs) + len(al.unmatched_pred) + len(al.unmatched_gold)
    assert sum(1 for r in s.records if r.pred_index is not None) == len(pred)
    assert sum(1 for r in s.records if r.gold_index is not None) == len(gold)


def test_classify_all_sentiment_flips():
    gold = [list(SUSHI_GOLD)] * 3
    pred = [[q.replace(sentiment=Sentiment.NEUTRAL) for q in g] for g in gold]
    s = classify_errors(zip(pred, gold))
    assert s.counts == Counter({"single-sentiment": 6})
    assert s.single_element == s.n_errors == 6


def test_classify_perfect():
    s = classify_errors([(SUSHI_GOLD, SUSHI_GOLD)])
    assert s.n_errors == 0 and s.counts["exact"] == 2


def test_classify_recovers_provenance(toy_train):
    examples, _ = synthesize_corpus(toy_train[:200], SynthConfig(seed=9))
    s = classify_errors((ex.draft, ex.gold) for ex in examples)
    prov = Counter(ex.provenance for ex in examples)
    for element in ("aspect", "category", "opinion", "sentiment"):
        assert s.counts[f"single-{element}"] == prov[f"{element}-error"]
    assert s.n_errors == sum(v for k, v in prov.items() if k != "identity")


def test_gold_slots_and_missing():
    pred = [SUSHI_GOLD[0].replace(opinion="stale", sentiment=Sentiment.NEGATIVE)]
    assert gold_slots(pred, SUSHI_GOLD) == ["multi-element", "missing"]


def test_migration_identities():
    gold = [list(SUSHI_GOLD), [Q(None, "restaurant general", "great", "positive")]]
    s1 = [[SUSHI_GOLD[0].replace(category="food general",
                                 sentiment=Sentiment.NEUTRAL)], []]
    same = migration_matrix(s1, s1, gold)
    m = same.matrix()
    assert all(m[i][j] == 0 for i in range(len(m)) for j in range(len(m)) if i != j)
    fixed = migration_matrix(s1, gold, gold)
    assert fixed.regression == 0
    assert fixed.slots2 == Counter({"exact": 3})
    compressed = migration_matrix(s1, [[SUSHI_GOLD[0].replace(category="food general")], []], gold)
    assert compressed.compression == 1
    assert compressed.transitions[("multi-element", "single-category")] == 1
    regressed = migration_matrix(gold, s1, gold)
    assert regressed.regression == 3


def test_migration_rows_sum_to_stage1_slots():
    gold = [list(SUSHI_GOLD)]
    s1 = [[SUSHI_GOLD[1]]]
    rep = migration_matrix(s1, gold, gold)
    for a, row in zip(rep.as_dict()["classes"], rep.matrix()):
        assert sum(row) == rep.slots1.get(a, 0)
    assert {r["class"] for r in bar_chart_rows(rep)} >= {"missing", "spurious"}


def test_migration_length_check():
    with pytest.raises(ValueError):
        migration_matrix([[]], [], [[]])


small_sides = st.lists(quad, max_size=4)


@settings(max_examples=150, deadline=None)
@given(small_sides, small_sides.filter(bool), st.randoms())
def test_gold_status_matches_exhaustive_and_ignores_order(pred, gold, rnd):
    status = gold_slots(pred, gold)
    assert status == brute_gold_status(pred, gold)
    shuffled = list(pred)
    rnd.shuffle(shuffled)
    assert gold_slots(shuffled, gold) == status


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(small_sides, small_sides, small_sides), min_size=1, max_size=4),
       st.randoms())
def test_migration_invariant_under_prediction_order(triples, rnd):
    s1 = [list(a) for a, _, _ in triples]
    s2 = [list(b) for _, b, _ in triples]
    gold = [list(c) for _, _, c in triples]
    before = migration_matrix(s1, s2, gold).as_dict()
    for p in s1 + s2:
        rnd.shuffle(p)
    assert migration_matrix(s1, s2, gold).as_dict() == before


def test_align_canonical_maps_back_to_original_indices():
    gold = list(SUSHI_GOLD)
    pred = [gold[1], gold[0]]
    al = align_canonical(pred, gold)
    assert al.pairs == ((0, 1), (1, 0))


def test_dissolving_depends_on_which_optimum_is_chosen():
    # two optimal assignments of total cost 4: one has a cost-4 pair (dissolved),
    # the other a 3+1 split (kept); records follow the canonical alignment
    same = Quad.make(None, "location general", "sushi", "positive")
    pred = [same, same, Quad.make(None, "food prices", "sushi sushi", "negative")]
    gold = [same, same, Quad.make("sushi", "location general", "sushi", "positive")]
    assert align_quads(pred, gold).total_cost == align_canonical(pred, gold).total_cost == 4
    s = classify_errors([(pred, gold)])
    al = align_canonical(pred, gold)
    assert len(s.records) == len(al.pairs) + len(al.unmatched_pred) + len(al.unmatched_gold)
