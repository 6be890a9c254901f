"""Regenerate the toy corpus splits under tests/data/.

    python scripts/make_fixture.py
"""

from pathlib import Path

import numpy as np

from quadcorrect.corpus import export_legacy_line
from quadcorrect.toydata import generate_corpus

SPLITS = {"train": 500, "dev": 60, "test": 80}
OUT = Path(__file__).resolve().parents[1] / "tests" / "data"


def main():
    rng = np.random.default_rng(20240601)
    OUT.mkdir(parents=True, exist_ok=True)
    for name, n in SPLITS.items():
        corpus = generate_corpus(n, rng=rng)
        path = OUT / f"toy_rest_{name}.txt"
        path.write_text("".join(export_legacy_line(ex) + "\n" for ex in corpus), encoding="utf-8")
        print(f"{path.name}: {n} sentences, {sum(len(ex.quads) for ex in corpus)} quads")


if __name__ == "__main__":
    main()
