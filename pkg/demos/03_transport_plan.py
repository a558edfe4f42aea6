"""
Moving one sentence onto another
================================

Walks through the word-movement distance between two short sentences:
term-frequency masses, the pairwise ground costs, and the exact optimal
transport plan.
"""

import numpy as np

from wsdsim import WordVectorTable, build_nbow, ground_cost, solve_wmd, wmd_similarity

np.set_printoptions(precision=3, suppress=True)

# ---------------------------------------------------------------------------
# A tiny vector table. Related words sit near each other on purpose:
# (press, squeeze) and (grape, fruit) form two tight pairs.
# ---------------------------------------------------------------------------

table = WordVectorTable(dimension=2, entries={
    "press":   np.array([1.0, 0.0]),
    "squeeze": np.array([0.9, 0.1]),
    "grape":   np.array([0.0, 1.0]),
    "fruit":   np.array([0.1, 0.9]),
    "legal":   np.array([-1.0, 0.0]),
    "case":    np.array([-0.9, -0.2]),
})

sent_a = ["press", "the", "grape"]
sent_b = ["squeeze", "a", "fruit"]
sent_c = ["legal", "case", "file"]

# ---------------------------------------------------------------------------
# Each sentence becomes a bag of normalized term frequencies over the words
# the table knows. "the"/"a"/"file" are out of vocabulary and drop out.
# ---------------------------------------------------------------------------

doc_a = build_nbow(sent_a, table)
doc_b = build_nbow(sent_b, table)
doc_c = build_nbow(sent_c, table)

for name, doc in (("A", doc_a), ("B", doc_b), ("C", doc_c)):
    pairs = ", ".join(f"{w}:{m:.2f}" for w, m in zip(doc.words, doc.mass))
    print(f"doc {name}: {pairs}   (dropped {doc.oov_dropped} unknown tokens)")

# ---------------------------------------------------------------------------
# Ground cost: straight-line distance between word vectors.
# ---------------------------------------------------------------------------

cost_ab = ground_cost(doc_a, doc_b)
print("\nground costs A -> B:")
header = "        " + "".join(f"{w:>9}" for w in doc_b.words)
print(header)
for w, row in zip(doc_a.words, cost_ab):
    print(f"{w:>8}" + "".join(f"{c:9.3f}" for c in row))

# ---------------------------------------------------------------------------
# The exact solver returns the minimum-cost plan: how much of each source
# word's mass flows to each target word.
# ---------------------------------------------------------------------------

plan = solve_wmd(doc_a, doc_b)
print(f"\noptimal cost A -> B: {plan.cost:.4f}")
for i, src in enumerate(doc_a.words):
    for j, dst in enumerate(doc_b.words):
        if plan.flow[i, j] > 1e-12:
            print(f"  {plan.flow[i, j]:.2f} of mass moves {src} -> {dst}")

# The related sentence is much cheaper to reach than the unrelated one,
# and similarity is just the negated cost.
cost_ac = solve_wmd(doc_a, doc_c).cost
print(f"\ncost A -> C (unrelated): {cost_ac:.4f}")
print(f"similarity A~B: {wmd_similarity(doc_a, doc_b):.4f}")
print(f"similarity A~C: {wmd_similarity(doc_a, doc_c):.4f}")

# ---------------------------------------------------------------------------
# Reordering tokens changes nothing: the bag representation is order-free,
# so a sentence is at distance zero from its own permutation.
# ---------------------------------------------------------------------------

shuffled = build_nbow(["grape", "press", "the"], table)
print(f"\ncost A -> shuffled A: {solve_wmd(doc_a, shuffled).cost:.1e}")
