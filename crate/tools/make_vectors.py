"""Writes a small synthetic embedding file in the usual `word v1 ... vd` layout.

Words are grouped into clusters whose centers form a regular simplex, so
words in different clusters have negative cosine similarity and words in
the same cluster are close. Noise is kept orthogonal to the cluster centers.

    python3 tools/make_vectors.py crates/core/fixtures/resources/vectors.txt
"""

import sys

import numpy as np

DIM = 50
SEED = 11
NOISE = 0.25

CLUSTERS = [
    ["blue", "black", "red", "white", "gray", "green", "brown"],
    ["large", "small", "big", "little", "huge", "tiny"],
    ["busy", "crowded", "quiet", "empty", "packed"],
    ["local", "municipal", "federal", "foreign"],
    ["young", "old", "elderly", "male", "female"],
    ["dark", "public", "leather", "undercover", "senior", "asian"],
    ["brutally", "violently", "viciously", "savagely", "repeatedly", "fatally", "brazenly"],
    ["quickly", "swiftly", "rapidly", "slowly", "later", "soon"],
    ["guilty", "innocent", "dead", "alive"],
]


def main():
    rng = np.random.default_rng(SEED)
    k = len(CLUSTERS)
    simplex = np.eye(k) - 1.0 / k
    simplex /= np.linalg.norm(simplex, axis=1, keepdims=True)
    basis, _ = np.linalg.qr(rng.standard_normal((DIM, k)))
    centers = simplex @ basis.T
    rows = []
    for c, words in enumerate(CLUSTERS):
        for w in words:
            noise = rng.standard_normal(DIM)
            noise -= basis @ (basis.T @ noise)
            noise /= np.linalg.norm(noise)
            rows.append((w, c, centers[c] + NOISE * noise))
    assert len(rows) == 50
    unit = {w: v / np.linalg.norm(v) for w, _, v in rows}
    for a, ca, _ in rows:
        for b, cb, _ in rows:
            cos = float(unit[a] @ unit[b])
            if ca != cb:
                assert cos < -0.02, (a, b, cos)
            elif a != b:
                assert cos > 0.6, (a, b, cos)
    out = sys.argv[1] if len(sys.argv) > 1 else "vectors.txt"
    with open(out, "w") as f:
        for w, _, v in rows:
            f.write(w + " " + " ".join(f"{x:.6f}" for x in v) + "\n")


if __name__ == "__main__":
    main()
