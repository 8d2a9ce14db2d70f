"""Regenerate data/hotel_comments.jsonl, the bundled 574-comment fixture.

The fixture is a synthetic hotel-review corpus with pinned gold sentiment
counts (265 positive / 129 neutral / 180 negative) and 20 domain nouns
whose document frequencies dominate every other token, so the keyword
extractor always lands on the same top-20. The generation is seeded and
the script asserts the invariants before writing, so reruns are
byte-identical.

Usage: python3 scripts/generate_fixture.py [output_path]
"""

from __future__ import annotations

import json
import random
import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from fairview.pipeline import STOPWORDS, _candidate_terms  # noqa: E402

SEED = 20260809
N_POS, N_NEU, N_NEG = 265, 129, 180

# The 20 intended keywords with sampling weights (higher weight -> higher df).
KEYWORDS = {
    "staff": 1.6,
    "room": 1.6,
    "location": 1.2,
    "breakfast": 1.2,
    "service": 1.1,
    "pool": 1.0,
    "bed": 1.0,
    "wifi": 1.0,
    "bathroom": 0.9,
    "restaurant": 0.9,
    "beach": 0.9,
    "reception": 0.8,
    "view": 0.8,
    "noise": 0.8,
    "price": 0.8,
    "bar": 0.7,
    "gym": 0.7,
    "parking": 0.7,
    "spa": 0.7,
    "checkin": 0.6,
}

POS_ADJ = """excellent wonderful fantastic lovely superb comfortable spacious
friendly helpful spotless delicious charming immaculate gorgeous pleasant
attentive generous quick modern cozy quiet stunning impeccable welcoming
fresh tasty convenient efficient relaxing bright""".split()

NEG_ADJ = """dirty rude noisy awful terrible broken slow cramped stained
smelly outdated overpriced cold unhelpful disappointing filthy tiny
uncomfortable chaotic grim stale shabby dim leaky crowded careless bland
worn sticky dreadful""".split()

NEU_ADJ = """average standard ordinary typical acceptable adequate plain
unremarkable reasonable basic fair modest""".split()

# Openers add texture; each is capped so no filler can reach keyword df.
OPENERS = [
    "honestly", "overall", "frankly", "sadly", "thankfully",
    "surprisingly", "definitely", "certainly", "absolutely", "unfortunately",
]
OPENER_CAP = 12

PATTERNS_1 = [
    "The {k1} was {a1}.",
    "{A1} {k1}.",
    "{A1} {k1}!",
    "Such a {a1} {k1}.",
    "The {k1} here is {a1}.",
    "Found the {k1} {a1}.",
    "A {a1} {k1} all in all.",
]
PATTERNS_2 = [
    "The {k1} was {a1} and the {k2} was {a2}.",
    "{A1} {k1}, {a2} {k2}.",
    "The {k1} was {a1}; the {k2} seemed {a2} too.",
    "Both the {k1} and the {k2} were {a1}.",
    "The {k1} was {a1}, with a {a2} {k2}.",
    "{A1} {k1} and a very {a2} {k2}.",
]
PATTERNS_3 = [
    "The {k1} was {a1}, the {k2} {a2}, and the {k3} {a3}.",
    "{A1} {k1}, {a2} {k2}, {a3} {k3}.",
    "The {k1} was {a1}; the {k2} and the {k3} were {a2}.",
]
MIXED_NEU = [
    "The {k1} was {a1} but the {k2} was {a2}.",
    "A {a1} {k1}, though the {k2} seemed {a2}.",
]


def build_corpus() -> list[dict]:
    rng = random.Random(SEED)
    labels = ["positive"] * N_POS + ["neutral"] * N_NEU + ["negative"] * N_NEG
    rng.shuffle(labels)

    terms = list(KEYWORDS)
    weights = list(KEYWORDS.values())
    opener_used = Counter()

    records = []
    for i, label in enumerate(labels, start=1):
        n_kw = rng.choices([1, 2, 3], weights=[0.35, 0.45, 0.20])[0]
        kws = []
        while len(kws) < n_kw:
            pick = rng.choices(terms, weights=weights)[0]
            if pick not in kws:
                kws.append(pick)

        if label == "positive":
            adjs = rng.sample(POS_ADJ, 3)
        elif label == "negative":
            adjs = rng.sample(NEG_ADJ, 3)
        else:
            adjs = rng.sample(NEU_ADJ, 3)

        if label == "neutral" and len(kws) >= 2 and rng.random() < 0.4:
            pattern = rng.choice(MIXED_NEU)
            adjs = [rng.choice(POS_ADJ), rng.choice(NEG_ADJ), ""]
        elif n_kw == 1:
            pattern = rng.choice(PATTERNS_1)
        elif n_kw == 2:
            pattern = rng.choice(PATTERNS_2)
        else:
            pattern = rng.choice(PATTERNS_3)

        text = pattern.format(
            k1=kws[0],
            k2=kws[1] if len(kws) > 1 else "",
            k3=kws[2] if len(kws) > 2 else "",
            a1=adjs[0],
            a2=adjs[1],
            a3=adjs[2],
            A1=adjs[0].capitalize(),
        )
        if rng.random() < 0.10:
            opener = rng.choice(OPENERS)
            if opener_used[opener] < OPENER_CAP:
                opener_used[opener] += 1
                text = opener.capitalize() + ", " + text[0].lower() + text[1:]

        rec = {"id": f"c{i:04d}", "text": text, "gold_sentiment": label}
        if rng.random() < 0.25:
            rec["lang"] = "en"
        if rng.random() < 0.10:
            rec["source"] = "travel-site"
        records.append(rec)
    return records


def check(records: list[dict]) -> None:
    counts = Counter(r["gold_sentiment"] for r in records)
    assert counts["positive"] == N_POS and counts["neutral"] == N_NEU
    assert counts["negative"] == N_NEG and len(records) == 574

    # document frequency of every candidate term
    df: Counter = Counter()
    for r in records:
        for term in set(_candidate_terms(r["text"])):
            df[term] += 1

    kw_dfs = {t: df[t] for t in KEYWORDS}
    others = {t: n for t, n in df.items() if t not in KEYWORDS}
    max_other = max(others.values())
    min_kw = min(kw_dfs.values())
    assert min_kw > max_other, (
        f"keyword separation broken: min keyword df {min_kw} "
        f"vs max other df {max_other} ({max(others, key=others.get)!r})"
    )

    for r in records:
        for token in r["text"].replace(",", " ").replace(".", " ").replace(";", " ").replace(
            "!", " "
        ).split():
            t = token.lower()
            ok = (
                t in STOPWORDS
                or t in KEYWORDS
                or t in POS_ADJ
                or t in NEG_ADJ
                or t in NEU_ADJ
                or t in OPENERS
                or t in ("seemed", "found")
            )
            assert ok, f"unexpected token {t!r} in {r['id']}"


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data/hotel_comments.jsonl")
    records = build_corpus()
    check(records)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    print(f"wrote {len(records)} records to {out}")


if __name__ == "__main__":
    main()
