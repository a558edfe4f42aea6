"""Similarity measures: one scoring surface over cosine and WMD backends.

A measure binds a scoring kind to the provider it needs:

* ``cosine_static_mean``: cosine between pooled static word vectors.
* ``cosine_cache``: cosine between cached contextual vectors.
* ``wmd``: negated Word Mover's Distance between token multisets.

Scores are only comparable within one measure and one instance; no
cross-measure normalization is attempted.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dataset import Instance, SenseInventory
from .embedding import (
    CacheProvider,
    ContextualCache,
    LayerMix,
    PoolingWeights,
    StaticVectorProvider,
    WordVectorTable,
)
from .errors import WsdsimError
from .transport import build_nbow, wmd_similarity

KINDS = ("cosine_static_mean", "cosine_cache", "wmd")


def cosine(u, v) -> float:
    """Cosine similarity (u.v)/(|u||v|), clamped into [-1, 1].

    A zero-norm input signals an all-OOV or corrupt vector upstream and is
    rejected rather than silently mapped to zero.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine undefined for a zero-norm vector")
    value = float(np.dot(u, v) / (nu * nv))
    return max(-1.0, min(1.0, value))


@dataclass(frozen=True)
class Score:
    value: float
    kind: str


@dataclass
class SimilarityMeasure:
    """A scoring kind bound to the provider it operates on."""

    kind: str
    provider: object

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "wmd" and not isinstance(self.provider, WordVectorTable):
            raise ValueError("wmd measure requires a WordVectorTable")
        if self.kind == "cosine_cache" and not isinstance(self.provider, CacheProvider):
            raise ValueError("cosine_cache measure requires a CacheProvider")
        if self.kind == "cosine_static_mean" and not isinstance(
            self.provider, StaticVectorProvider
        ):
            raise ValueError("cosine_static_mean measure requires a StaticVectorProvider")


def cosine_static_measure(
    table: WordVectorTable, pooling: Optional[PoolingWeights] = None
) -> SimilarityMeasure:
    provider = StaticVectorProvider(table=table, pooling=pooling or PoolingWeights())
    return SimilarityMeasure(kind="cosine_static_mean", provider=provider)


def cosine_cache_measure(
    cache: ContextualCache, mix: Optional[LayerMix] = None
) -> SimilarityMeasure:
    return SimilarityMeasure(kind="cosine_cache", provider=CacheProvider(cache=cache, mix=mix))


def wmd_measure(table: WordVectorTable) -> SimilarityMeasure:
    return SimilarityMeasure(kind="wmd", provider=table)


def score(
    measure: SimilarityMeasure,
    instance: Instance,
    word: str,
    sense_id: int,
    inventory: SenseInventory,
) -> Score:
    """Similarity between an instance's context and one sense descriptor."""
    try:
        if measure.kind == "wmd":
            table = measure.provider
            context_doc = build_nbow(instance.tokens, table)
            sense_doc = build_nbow(inventory.descriptor(sense_id).split(), table)
            value = wmd_similarity(context_doc, sense_doc)
        else:
            context = measure.provider.context_vector(instance)
            sense = measure.provider.sense_vector(word, sense_id, inventory)
            value = cosine(context, sense)
    except WsdsimError as exc:
        raise type(exc)(
            f"scoring instance {instance.instance_id} against sense {word!r}/{sense_id}: {exc}"
        ) from exc
    return Score(value=value, kind=measure.kind)


def text_cosine(tokens_x, tokens_y, table: WordVectorTable,
                pooling: Optional[PoolingWeights] = None) -> float:
    """General two-texts cosine over pooled static vectors."""
    provider = StaticVectorProvider(table=table, pooling=pooling or PoolingWeights())
    u = provider._pool_tokens(list(tokens_x), "first text")
    v = provider._pool_tokens(list(tokens_y), "second text")
    return cosine(u, v)
