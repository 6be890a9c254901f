"""Independent oracles and hypothesis strategies shared by the tests.

The oracles re-derive results by enumeration and plain tuple comparison; they
deliberately avoid the package's alignment and scoring code paths.
"""

from itertools import permutations, product
from pathlib import Path

from hypothesis import strategies as st

from quadcorrect.quads import DEFAULT_CATEGORIES, IMPLICIT, AnnotatedSentence, Quad, Sentiment

DATA = Path(__file__).parent / "data"

SUSHI_SENTENCE = "The sushi was fresh but overpriced."
SUSHI_GOLD = (
    Quad.make("sushi", "food quality", "fresh", "positive"),
    Quad.make("sushi", "food prices", "overpriced", "negative"),
)
SUSHI = AnnotatedSentence(SUSHI_SENTENCE, SUSHI_GOLD)
SUSHI_LINEAR = ("food quality is great because sushi is fresh [SSEP] "
                "food prices is bad because sushi is overpriced")
# published six-line output for the sushi example, verbatim
REFERENCE_LINES = [
    "The sushi was fresh but overpriced. [SENTSEP] food general is great because sushi is fresh [SSEP] food prices is bad because sushi is overpriced #### food quality is great because sushi is fresh [SSEP] food prices is bad because sushi is overpriced",
    "The sushi was fresh but overpriced. [SENTSEP] food quality is great because fresh is fresh [SSEP] food prices is bad because sushi is overpriced #### food quality is great because sushi is fresh [SSEP] food prices is bad because sushi is overpriced",
    "The sushi was fresh but overpriced. [SENTSEP] food quality is ok because sushi is fresh [SSEP] food prices is bad because sushi is overpriced #### food quality is great because sushi is fresh [SSEP] food prices is bad because sushi is overpriced",
    "The sushi was fresh but overpriced. [SENTSEP] food quality is great because sushi is fresh [SSEP] food prices is bad because sushi is fresh #### food quality is great because sushi is fresh [SSEP] food prices is bad because sushi is overpriced",
    "The sushi was fresh but overpriced. [SENTSEP] food quality is great because sushi is fresh [SSEP] restaurant prices is bad because sushi is overpriced #### food quality is great because sushi is fresh [SSEP] food prices is bad because sushi is overpriced",
    "The sushi was fresh but overpriced. [SENTSEP] food quality is great because sushi is fresh [SSEP] food prices is bad because sushi is overpriced #### food quality is great because sushi is fresh [SSEP] food prices is bad because sushi is overpriced",
]
REFERENCE_TYPES = ["category", "aspect", "sentiment", "opinion", "category"]
# found by scripts/find_reference_seed.py
REFERENCE_SEED = 23629


# -- oracles -----------------------------------------------------------------

def plain(q):
    """Quad as a tuple of plain strings, whitespace-normalized by str.split."""
    aspect = "\x00IMPLICIT" if q.aspect is IMPLICIT else " ".join(q.aspect.split())
    return (aspect, " ".join(q.category.split()), " ".join(q.opinion.split()), q.sentiment.value)


def hamming(p, g):
    return sum(a != b for a, b in zip(plain(p), plain(g)))


def brute_tp(pred, gold):
    """Deduplicate each side by pairwise comparison, then count pairwise exact matches."""
    def dedup(quads):
        out = []
        for q in quads:
            if not any(plain(q) == plain(o) for o in out):
                out.append(q)
        return out

    p, g = dedup(pred), dedup(gold)
    tp = sum(1 for a in p for b in g if plain(a) == plain(b))
    return tp, len(p), len(g)


def brute_min_cost(cost, n_rows, n_cols):
    if n_rows == 0 or n_cols == 0:
        return 0
    if n_rows <= n_cols:
        return min(sum(cost[i][c] for i, c in enumerate(cols))
                   for cols in permutations(range(n_cols), n_rows))
    return min(sum(cost[r][j] for j, r in enumerate(rows))
               for rows in permutations(range(n_rows), n_cols))


def brute_gold_status(pred, gold):
    """Status per gold quad by exhaustive search, using the documented tie rule.

    Predictions are visited in content order; among minimum-cost assignments the
    lexicographically smallest gold-index vector wins (unmatched = len(gold)).
    """
    order = sorted(pred, key=lambda q: (q.aspect is IMPLICIT, plain(q)[0], *plain(q)[1:]))
    n, m = len(order), len(gold)
    want = min(n, m)
    best = None
    for vec in product(range(m + 1), repeat=n):
        real = [v for v in vec if v < m]
        if len(real) != want or len(set(real)) != len(real):
            continue
        cost = sum(hamming(order[i], gold[v]) for i, v in enumerate(vec) if v < m)
        if best is None or cost < best[0]:
            best = (cost, vec)
    status = ["missing"] * m
    if best is None:
        return status
    for i, v in enumerate(best[1]):
        if v == m:
            continue
        diffs = [a != b for a, b in zip(plain(order[i]), plain(gold[v]))]
        k = sum(diffs)
        if k == 0:
            status[v] = "exact"
        elif k == 1:
            status[v] = "single-" + ("aspect", "category", "opinion", "sentiment")[diffs.index(True)]
        elif k < 4:
            status[v] = "multi-element"
    return status


# -- strategies --------------------------------------------------------------

WORDS = ["sushi", "fresh", "bad", "great", "ok", "wine", "because", "food", "quality",
         "prices", "very", "so", "not", "the", "a", "crispy", "rude", "staff", "x", "it's",
         "général", "naïve", "5", "$"]

word = st.one_of(st.sampled_from(WORDS),
                 st.text(alphabet="abcdefghijklmnopqrstuvwxyz'-", min_size=1, max_size=7))
term = st.lists(word, min_size=1, max_size=3).map(" ".join).filter(
    lambda t: "is" not in t.split() and t.strip())
aspect = st.one_of(st.just(IMPLICIT), term.filter(lambda t: t != "it"))
quad = st.builds(Quad, aspect, st.sampled_from(DEFAULT_CATEGORIES), term,
                 st.sampled_from(list(Sentiment)))
quad_list = st.lists(quad, max_size=6)


def load_toy(split="train"):
    from quadcorrect.corpus import read_legacy_file
    corpus, rejects = read_legacy_file(DATA / f"toy_rest_{split}.txt")
    assert not rejects
    return corpus
