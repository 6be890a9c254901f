"""Search for a synthesis seed whose draws reproduce the six published sushi lines.

The draws are uniform, so some seed reproduces the published choices; this
finds the smallest one for the sushi sentence at corpus index 0.

    python scripts/find_reference_seed.py [--limit N]
"""

import argparse

from quadcorrect.corpus import write_corrector_line
from quadcorrect.quads import AnnotatedSentence, Quad
from quadcorrect.synth import SynthConfig, synthesize_drafts

SENTENCE = "The sushi was fresh but overpriced."
GOLD = (
    Quad.make("sushi", "food quality", "fresh", "positive"),
    Quad.make("sushi", "food prices", "overpriced", "negative"),
)
_G = ("food quality is great because sushi is fresh [SSEP] "
      "food prices is bad because sushi is overpriced")
EXPECTED = [
    f"{SENTENCE} [SENTSEP] food general is great because sushi is fresh [SSEP] "
    f"food prices is bad because sushi is overpriced #### {_G}",
    f"{SENTENCE} [SENTSEP] food quality is great because fresh is fresh [SSEP] "
    f"food prices is bad because sushi is overpriced #### {_G}",
    f"{SENTENCE} [SENTSEP] food quality is ok because sushi is fresh [SSEP] "
    f"food prices is bad because sushi is overpriced #### {_G}",
    f"{SENTENCE} [SENTSEP] food quality is great because sushi is fresh [SSEP] "
    f"food prices is bad because sushi is fresh #### {_G}",
    f"{SENTENCE} [SENTSEP] food quality is great because sushi is fresh [SSEP] "
    f"restaurant prices is bad because sushi is overpriced #### {_G}",
    f"{SENTENCE} [SENTSEP] {_G} #### {_G}",
]


def lines_for(seed: int) -> list[str]:
    drafts, _ = synthesize_drafts(AnnotatedSentence(SENTENCE, GOLD), SynthConfig(seed=seed), 0)
    return [write_corrector_line(d) for d in drafts]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=int, default=2_000_000)
    args = ap.parse_args()
    for seed in range(args.limit):
        if lines_for(seed) == EXPECTED:
            print(seed)
            return
    raise SystemExit("no seed found")


if __name__ == "__main__":
    main()
