"""Writes the annotated crime corpus and its frequency table.

The counts are computed here, independently of the Rust analyzer, so the
two can be compared in tests.

    python3 tools/make_crime_corpus.py crates/core/fixtures/crime
"""

import random
import sys
from collections import Counter
from pathlib import Path

SEED = 20240611
SENTENCES = 200

NOUN_PAIRS = {
    "restaurant": ["busy", "crowded", "small", "Asian"],
    "bar": ["crowded", "local", "dark"],
    "store": ["small", "local", "empty"],
    "park": ["public", "quiet", "dark"],
    "police": ["local", "municipal"],
    "officer": ["local", "undercover"],
    "detective": ["senior", "local"],
    "jacket": ["blue", "black", "leather"],
    "jeans": ["black", "blue"],
    "hoodie": ["gray", "red"],
    "shirt": ["white", "red"],
    "cap": ["black", "red"],
    "sneaker": ["white", "black"],
}
# lemma -> surface used in the corpus
NOUN_SURFACE = {"sneaker": "sneakers", "police": "police"}

VERB_PAIRS = {
    "stab": ("stabbed", ["brutally", "repeatedly"]),
    "shoot": ("shot", ["fatally", "repeatedly"]),
    "punch": ("punched", ["violently", "repeatedly"]),
    "rob": ("robbed", ["violently", "brazenly"]),
    "attack": ("attacked", ["brutally", "violently"]),
    "arrest": ("arrested", ["quickly", "later"]),
    "detain": ("detained", ["swiftly", "later"]),
}

PLACES = ["New Jersey", "Newark", "Trenton", "Camden", "Jersey City"]
DAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"]
SUBJECTS = [("men", "man"), ("suspects", "suspect"), ("officers", "officer")]
OBJECTS = [("victim", "victim"), ("customer", "customer"), ("worker", "worker")]


def row(surface, lemma, pos, ne, head, dep):
    return [surface, lemma, pos, ne, head, dep]


def place_rows(place, head, dep, start):
    words = place.split()
    out = []
    for i, w in enumerate(words):
        ne = ("B-" if i == 0 else "I-") + "GPE"
        if i == 0:
            out.append(row(w, w, "PROPN", ne, head, dep))
        else:
            out.append(row(w, w, "PROPN", ne, start, "flat"))
    return out


def noun_sentence(rng, head, mod):
    # Police found the MOD HEAD in PLACE .
    surface = NOUN_SURFACE.get(head, head)
    place = rng.choice(PLACES)
    rows = [
        row("Police", "police", "NOUN", "O", 2, "nsubj"),
        row("found", "find", "VERB", "O", 0, "root"),
        row("the", "the", "DET", "O", 5, "det"),
        row(mod, mod.lower(), "ADJ", "O", 5, "amod"),
        row(surface, head, "NOUN", "O", 2, "obj"),
        row("in", "in", "ADP", "O", 7, "case"),
    ]
    rows += place_rows(place, 2, "obl", 7)
    rows.append(row(".", ".", "PUNCT", "O", 2, "punct"))
    return rows


def verb_sentence(rng, lemma, adv):
    # The SUBJ ADV VERB a OBJ on DAY .
    verb = VERB_PAIRS[lemma][0]
    subj, subj_lemma = rng.choice(SUBJECTS)
    obj, obj_lemma = rng.choice(OBJECTS)
    day = rng.choice(DAYS)
    return [
        row("The", "the", "DET", "O", 2, "det"),
        row(subj, subj_lemma, "NOUN", "O", 4, "nsubj"),
        row(adv, adv, "ADV", "O", 4, "advmod"),
        row(verb, lemma, "VERB", "O", 0, "root"),
        row("a", "a", "DET", "O", 6, "det"),
        row(obj, obj_lemma, "NOUN", "O", 4, "obj"),
        row("on", "on", "ADP", "O", 8, "case"),
        row(day, day, "PROPN", "O", 4, "obl"),
        row(".", ".", "PUNCT", "O", 4, "punct"),
    ]


def build():
    rng = random.Random(SEED)
    noun_pairs = [(h, m) for h, ms in NOUN_PAIRS.items() for m in ms]
    verb_pairs = [(v, a) for v, (_, advs) in VERB_PAIRS.items() for a in advs]
    plan = [("n", p) for p in noun_pairs] + [("v", p) for p in verb_pairs]
    while len(plan) < SENTENCES:
        if rng.random() < 0.6:
            plan.append(("n", rng.choice(noun_pairs)))
        else:
            plan.append(("v", rng.choice(verb_pairs)))
    sentences = []
    for kind, (a, b) in plan:
        sentences.append(noun_sentence(rng, a, b) if kind == "n" else verb_sentence(rng, a, b))
    return sentences


def count(sentences):
    counts = Counter()
    for s in sentences:
        entity = None
        for r in s:
            surface, lemma, pos, ne, head, dep = r
            lemma = lemma.lower()
            if ne.startswith("B-"):
                if entity:
                    counts[entity] += 1
                entity = ("named-entity:place", surface)
            elif ne.startswith("I-") and entity:
                entity = (entity[0], entity[1] + " " + surface)
            else:
                if entity:
                    counts[entity] += 1
                entity = None
            cat = {"NOUN": "noun", "VERB": "verb", "ADJ": "adjective", "ADV": "adverb"}.get(pos)
            if cat:
                counts[(cat, lemma)] += 1
            if head:
                h = s[head - 1]
                if dep == "amod" and h[2] in ("NOUN", "PROPN"):
                    counts[("noun-modifier-pair", lemma + "|" + h[1].lower())] += 1
                if dep == "advmod" and h[2] == "VERB":
                    counts[("verb-modifier-pair", lemma + "|" + h[1].lower())] += 1
        if entity:
            counts[entity] += 1
    return counts


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    sentences = build()
    lines = ["# index\tsurface\tlemma\tpos\tne\thead\tdep"]
    for n, s in enumerate(sentences):
        lines.append(f"# sent {n + 1}")
        for i, r in enumerate(s, 1):
            lines.append("\t".join([str(i)] + [str(x) for x in r]))
        lines.append("")
    (out / "corpus.tsv").write_text("\n".join(lines))
    counts = count(sentences)
    rows = sorted(counts.items())
    (out / "frequencies.tsv").write_text("".join(f"{c}\t{k}\t{v}\n" for (c, k), v in rows))


if __name__ == "__main__":
    main()
