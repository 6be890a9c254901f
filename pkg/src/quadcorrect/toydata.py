"""Template-generated restaurant review sentences with gold quads.

Stand-in data for tests and demos when the public benchmark files are not
around. Sentences are lowercased like the benchmark releases, every aspect
and opinion is a literal span of its sentence, and no sentence carries two
identical quads.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .quads import IMPLICIT, AnnotatedSentence, Quad, Sentiment

FOODS = ["sushi", "pizza", "pasta", "salmon", "dumplings", "steak", "tacos", "ramen",
         "burger", "lamb chops", "pad thai", "risotto", "calamari", "tiramisu"]
DRINKS = ["wine", "coffee", "cocktails", "beer", "sangria", "espresso", "margaritas"]

ASPECTS = {
    "food quality": FOODS,
    "food prices": FOODS,
    "food general": ["food", "dishes", "entrees"],
    "food style_options": ["portions", "menu", "selection", "specials"],
    "drinks quality": DRINKS,
    "drinks prices": DRINKS,
    "drinks style_options": ["wine list", "drink menu", "beer selection"],
    "service general": ["service", "staff", "waiter", "waitress", "hostess", "manager"],
    "ambience general": ["decor", "atmosphere", "music", "patio", "ambience"],
    "location general": ["location", "view", "neighborhood"],
    "restaurant general": ["place", "restaurant", "spot"],
    "restaurant prices": ["prices", "bill"],
    "restaurant miscellaneous": ["reservation system", "parking", "bathroom"],
}

_QUALITY = {
    "positive": ["fresh", "delicious", "tasty", "perfectly cooked", "amazing", "flavorful"],
    "negative": ["bland", "stale", "soggy", "overcooked", "greasy", "cold"],
    "neutral": ["average", "ordinary", "passable"],
}
_PRICES = {
    "positive": ["reasonable", "cheap", "affordable", "fair"],
    "negative": ["overpriced", "expensive", "pricey", "a rip off"],
    "neutral": ["moderate", "standard"],
}
_STYLE = {
    "positive": ["generous", "varied", "huge", "extensive"],
    "negative": ["small", "limited", "tiny", "boring"],
    "neutral": ["typical", "predictable"],
}
_SERVICE = {
    "positive": ["friendly", "attentive", "helpful", "welcoming"],
    "negative": ["rude", "slow", "inattentive", "dismissive"],
    "neutral": ["professional", "efficient enough"],
}
_AMBIENCE = {
    "positive": ["cozy", "charming", "lovely", "romantic"],
    "negative": ["noisy", "cramped", "dark", "loud"],
    "neutral": ["plain", "simple"],
}
_LOCATION = {
    "positive": ["convenient", "beautiful", "perfect"],
    "negative": ["remote", "hard to find", "sketchy"],
    "neutral": ["central", "unremarkable"],
}
_GENERAL = {
    "positive": ["great", "wonderful", "fantastic", "excellent"],
    "negative": ["terrible", "disappointing", "awful"],
    "neutral": ["fine", "okay"],
}
_MISC = {
    "positive": ["easy", "clean", "spotless"],
    "negative": ["broken", "dirty", "confusing"],
    "neutral": ["adequate", "basic"],
}

OPINIONS = {
    "food quality": _QUALITY,
    "drinks quality": _QUALITY,
    "food prices": _PRICES,
    "drinks prices": _PRICES,
    "restaurant prices": _PRICES,
    "food style_options": _STYLE,
    "drinks style_options": _STYLE,
    "food general": _QUALITY,
    "service general": _SERVICE,
    "ambience general": _AMBIENCE,
    "location general": _LOCATION,
    "restaurant general": _GENERAL,
    "restaurant miscellaneous": _MISC,
}

EXPLICIT = ["the {a} was {o}", "the {a} were {o}", "we thought the {a} was {o}",
            "{o} {a}", "our {a} was {o}", "i found the {a} {o}"]
IMPLICIT_TEMPLATES = {
    "restaurant general": ["it was {o}", "overall {o}", "just {o}"],
    "food quality": ["everything we ate was {o}", "it tasted {o}"],
    "restaurant prices": ["it was {o} for what you get"],
}
JOINERS = [", and ", " but ", "; ", ", although ", " and "]


def _pick(rng: np.random.Generator, seq):
    return seq[int(rng.integers(len(seq)))]


def make_sentence(rng: np.random.Generator, max_quads: int = 3) -> AnnotatedSentence:
    n = 1 + int(rng.integers(max_quads))
    clauses, quads, used_aspects = [], [], set()
    categories = list(ASPECTS)
    while len(quads) < n:
        category = _pick(rng, categories)
        sentiment = _pick(rng, list(Sentiment))
        opinion = _pick(rng, OPINIONS[category][sentiment.value])
        if category in IMPLICIT_TEMPLATES and rng.random() < 0.25 and IMPLICIT not in used_aspects:
            clauses.append(_pick(rng, IMPLICIT_TEMPLATES[category]).format(o=opinion))
            aspect = IMPLICIT
        else:
            aspect = _pick(rng, ASPECTS[category])
            if aspect in used_aspects:
                continue
            clauses.append(_pick(rng, EXPLICIT).format(a=aspect, o=opinion))
        used_aspects.add(aspect)
        quads.append(Quad(aspect, category, opinion, sentiment))
    text = clauses[0]
    for clause in clauses[1:]:
        text += _pick(rng, JOINERS) + clause
    text += " ." if rng.random() < 0.8 else " !"
    return AnnotatedSentence(text, tuple(quads))


def generate_corpus(n: int, seed: int = 0, max_quads: int = 3,
                    rng: Optional[np.random.Generator] = None) -> list[AnnotatedSentence]:
    rng = rng if rng is not None else np.random.default_rng(seed)
    return [make_sentence(rng, max_quads) for _ in range(n)]
