"""
Pooling token vectors into sentence vectors
===========================================

Shows the two pooling modes (uniform mean and softmax-weighted) and how
per-layer vectors are mixed into one, using small hand-picked vectors.
"""

import numpy as np

from wsdsim import (
    LayerMix,
    PoolingWeights,
    cosine,
    mean_pool,
    mix_layers,
    softmax_weights,
    weighted_pool,
)

np.set_printoptions(precision=3, suppress=True)

# ---------------------------------------------------------------------------
# Three token vectors for "the metal bolt". The content word points along
# the x axis; the function words sit elsewhere.
# ---------------------------------------------------------------------------

tokens = ["the", "metal", "bolt"]
vectors = np.array([
    [0.1, 0.9],   # the
    [0.8, 0.2],   # metal
    [1.0, 0.0],   # bolt
])

print("token vectors:")
for tok, vec in zip(tokens, vectors):
    print(f"  {tok:>6}: {vec}")

# ---------------------------------------------------------------------------
# Uniform pooling: the plain component-wise mean.
# ---------------------------------------------------------------------------

mean = mean_pool(vectors)
print(f"\nmean pool          -> {mean}")

# ---------------------------------------------------------------------------
# Softmax pooling: a projection vector w scores each token, softmax turns
# the scores into weights. With w along x, content words dominate.
# ---------------------------------------------------------------------------

w = np.array([2.0, 0.0])
alpha = softmax_weights(vectors, w)
print(f"\nsoftmax weights with w={w}:")
for tok, a in zip(tokens, alpha):
    print(f"  {tok:>6}: {a:.3f}")

pooled = weighted_pool(vectors, PoolingWeights(mode="softmax", w=w))
print(f"softmax pool       -> {pooled}")

# The weighted pool carries a 1/n factor. Cosine comparisons never notice
# a positive scale, so both pooled forms rank the same against any probe.
probe = np.array([1.0, 0.1])
print(f"\ncosine(mean, probe)    = {cosine(mean, probe):.4f}")
print(f"cosine(softmax, probe) = {cosine(pooled, probe):.4f}")

# ---------------------------------------------------------------------------
# Layer mixing: encoders that expose several layers per token give a small
# stack of vectors. mix_layers takes gamma * sum_j w_j * layer_j with the
# w_j summing to one.
# ---------------------------------------------------------------------------

layers = np.array([
    [4.0, 0.0, 0.0],   # layer 0, say the surface layer
    [0.0, 4.0, 0.0],   # layer 1
    [0.0, 0.0, 4.0],   # layer 2
])

uniform = mix_layers(layers, LayerMix.uniform(3))
print(f"\nuniform mix of 3 layers        -> {uniform}")

top_heavy = mix_layers(layers, LayerMix(gamma=1.0, layer_weights=(0.0, 0.25, 0.75)))
print(f"mix weighted to the top layer  -> {top_heavy}")

scaled = mix_layers(layers, LayerMix(gamma=10.0, layer_weights=(0.0, 0.25, 0.75)))
print(f"same mix with gamma=10         -> {scaled}")
print("\n(gamma rescales; cosine scoring downstream is scale-invariant)")
