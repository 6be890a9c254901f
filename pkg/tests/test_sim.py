from collections import Counter

import pytest

from helpers import SUSHI, SUSHI_GOLD, brute_gold_status
from quadcorrect.errors import align_quads
from quadcorrect.metrics import score_lists
from quadcorrect.quads import ELEMENTS, mismatch_vector
from quadcorrect.sim import (
    ChannelConfig,
    ChannelLog,
    run_pipeline_sim,
    simulate_corrector,
    simulate_generator,
)


def _element_errors(preds, golds):
    total = 0
    for p, g in zip(preds, golds):
        al = align_quads(p, g)
        total += sum(sum(mismatch_vector(p[i], g[j])) for i, j in al.pairs)
    return total


def test_channel_config_validation():
    with pytest.raises(ValueError):
        ChannelConfig(eps_aspect=1.5)
    with pytest.raises(ValueError):
        ChannelConfig(drop=-0.1)


def test_zero_rates_copy_gold(toy_train):
    cfg = ChannelConfig(seed=4)
    for i, ex in enumerate(toy_train[:50]):
        assert simulate_generator(ex, cfg, i) == list(ex.quads)


def test_sentiment_only_channel(toy_train):
    cfg = ChannelConfig(eps_sentiment=1.0, seed=2)
    for i, ex in enumerate(toy_train[:50]):
        draft = simulate_generator(ex, cfg, i)
        assert len(draft) == len(ex.quads)
        for d, g in zip(draft, ex.quads):
            assert mismatch_vector(d, g) == (False, False, False, True)


def test_drop_and_insert(toy_train):
    log = ChannelLog()
    cfg = ChannelConfig(drop=1.0, insert=1.0, seed=1)
    for i, ex in enumerate(toy_train[:30]):
        draft = simulate_generator(ex, cfg, i, log)
        assert len(draft) <= 1
        for q in draft:
            assert q.aspect in ex.text and q.opinion in ex.text
    assert log.dropped == sum(len(ex.quads) for ex in toy_train[:30])
    assert log.inserted > 0


def test_rates_track_draw_log(toy_train):
    log = ChannelLog()
    cfg = ChannelConfig.uniform(0.1, seed=7)
    corpus = toy_train * 10
    for i, ex in enumerate(corpus):
        simulate_generator(ex, cfg, i, log)
    assert log.trials["aspect"] >= 10_000
    for e in ELEMENTS:
        assert abs(log.rate(e) - 0.1) <= 0.02
        assert log.applied[e] <= log.drawn[e]


def test_corrector_extremes(toy_train):
    cfg = ChannelConfig.uniform(0.3, drop=0.2, insert=0.3, seed=3)
    for i, ex in enumerate(toy_train[:80]):
        draft = simulate_generator(ex, cfg, i)
        full = simulate_corrector(draft, ex.quads, 1.0, seed=1, index=i)
        assert Counter(q.key() for q in full) == Counter(q.key() for q in ex.quads)
        assert simulate_corrector(draft, ex.quads, 0.0, seed=1, index=i) == draft


def test_corrector_validates_fix_prob():
    with pytest.raises(ValueError):
        simulate_corrector([], SUSHI_GOLD, 1.2)


def test_half_fix_prob_halves_element_errors(toy_train):
    corpus = toy_train * 10
    cfg = ChannelConfig.uniform(0.1, seed=12)
    golds = [list(ex.quads) for ex in corpus]
    drafts = [simulate_generator(ex, cfg, i) for i, ex in enumerate(corpus)]
    fixed = [simulate_corrector(d, g, 0.5, seed=12, index=i)
             for i, (d, g) in enumerate(zip(drafts, golds))]
    before, after = _element_errors(drafts, golds), _element_errors(fixed, golds)
    assert before > 2000
    # binomial expectation: half of the element errors survive
    assert abs(after / (0.5 * before) - 1) <= 0.05


def test_pipeline_trivial_cases(toy_train):
    clean = run_pipeline_sim(toy_train[:100], ChannelConfig(seed=0), 0.0)
    assert clean.stage1.f1 == 1.0 and clean.stage2.f1 == 1.0
    full = run_pipeline_sim(toy_train[:100], ChannelConfig.uniform(0.3, 0.1, 0.2, seed=0), 1.0)
    assert full.stage2.f1 == 1.0


def test_pipeline_moderate(toy_train):
    res = run_pipeline_sim(toy_train, ChannelConfig.uniform(0.1, 0.05, 0.05, seed=21), 0.7)
    assert res.stage2.f1 > res.stage1.f1
    assert res.migration.regression == 0


def test_pipeline_deterministic(toy_train):
    cfg = ChannelConfig.uniform(0.15, 0.05, 0.05, seed=8)
    a = run_pipeline_sim(toy_train[:120], cfg, 0.4)
    b = run_pipeline_sim(toy_train[:120], cfg, 0.4)
    assert a.stage1 == b.stage1 and a.stage2 == b.stage2
    assert a.migration.as_dict() == b.migration.as_dict()


def test_f1_monotone_in_fix_prob(toy_train):
    cfg = ChannelConfig.uniform(0.15, 0.1, 0.1, seed=5)
    f1 = [run_pipeline_sim(toy_train, cfg, p).stage2.f1 for p in (0, 0.25, 0.5, 0.75, 1)]
    assert f1 == sorted(f1)
    assert f1[-1] == 1.0


def test_migration_matches_independent_tally(toy_train):
    res = run_pipeline_sim(toy_train, ChannelConfig.uniform(0.15, 0.1, 0.1, seed=17), 0.5)
    tally = Counter()
    for d, c, ex in zip(res.drafts, res.corrected, toy_train):
        for a, b in zip(brute_gold_status(d, list(ex.quads)), brute_gold_status(c, list(ex.quads))):
            tally[(a, b)] += 1
    assert tally == +res.migration.transitions
    assert score_lists(res.drafts, [list(ex.quads) for ex in toy_train]) == res.stage1
