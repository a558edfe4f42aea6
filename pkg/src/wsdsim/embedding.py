"""Vector providers and pooling operations.

Two providers produce context and sense vectors:

* :class:`StaticVectorProvider` pools per-token vectors from a word-vector
  table (text format: optional "<count> <dimension>" header, then one
  "<word> <f1> ... <fD>" per line).
* :class:`CacheProvider` serves vectors precomputed by an exporter from a
  JSON Lines cache, optionally mixing per-layer vectors.

Cache file schema, one JSON object per line:

    {"kind": "header", "model": "<name>", "dimension": D, "layers": L}
    {"kind": "instance", "id": "<instance_id>", "vectors": [[...], ...]}
    {"kind": "sense", "word": "<w>", "sense_id": k, "vectors": [[...], ...]}
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .dataset import Instance, SenseInventory
from .errors import CacheFormatError, CoverageError, OovError, VectorTableError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Pooling and layer mixing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoolingWeights:
    """Token-pooling configuration: uniform weights or a softmax projection."""

    mode: str = "uniform"
    w: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.mode not in ("uniform", "softmax"):
            raise ValueError(f"unknown pooling mode {self.mode!r}")
        if self.mode == "softmax":
            if self.w is None:
                raise ValueError("softmax pooling requires a projection vector w")
            object.__setattr__(self, "w", np.asarray(self.w, dtype=float))


@dataclass(frozen=True)
class LayerMix:
    """Scalar gamma times a convex combination of per-layer vectors."""

    gamma: float = 1.0
    layer_weights: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        weights = np.asarray(self.layer_weights, dtype=float)
        if weights.ndim != 1 or weights.size == 0:
            raise ValueError("layer_weights must be a non-empty 1-d sequence")
        if np.any(weights < 0):
            raise ValueError("layer weights must be non-negative")
        if abs(weights.sum() - 1.0) > 1e-9:
            raise ValueError(f"layer weights must sum to 1, got {weights.sum()!r}")
        if not np.isfinite(self.gamma):
            raise ValueError("gamma must be finite")
        object.__setattr__(self, "layer_weights", tuple(float(x) for x in weights))

    @classmethod
    def uniform(cls, layers: int, gamma: float = 1.0) -> "LayerMix":
        return cls(gamma=gamma, layer_weights=tuple([1.0 / layers] * layers))


def _as_matrix(vectors) -> np.ndarray:
    arr = np.asarray(vectors, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("expected a non-empty list of equal-length vectors")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vectors contain NaN or Inf components")
    return arr


def mean_pool(vectors) -> np.ndarray:
    """Component-wise arithmetic mean of equal-length vectors."""
    return _as_matrix(vectors).mean(axis=0)


def softmax_weights(vectors, w) -> np.ndarray:
    """Per-token weights exp(w.h_i) / sum_j exp(w.h_j), overflow-guarded."""
    mat = _as_matrix(vectors)
    w = np.asarray(w, dtype=float)
    if w.shape != (mat.shape[1],):
        raise ValueError(
            f"projection has dimension {w.shape}, token vectors have {mat.shape[1]}"
        )
    logits = mat @ w
    logits -= logits.max()
    weights = np.exp(logits)
    return weights / weights.sum()


def weighted_pool(vectors, weights: PoolingWeights) -> np.ndarray:
    """Pooled sentence vector (1/n) * sum_i alpha_i h_i.

    The leading 1/n is kept even though the alphas already sum to one;
    downstream cosine scoring is invariant to the positive scale.
    """
    mat = _as_matrix(vectors)
    n = mat.shape[0]
    if weights.mode == "uniform":
        alpha = np.full(n, 1.0 / n)
    else:
        alpha = softmax_weights(mat, weights.w)
    return (alpha @ mat) / n


def mix_layers(per_layer, mix: LayerMix) -> np.ndarray:
    """gamma * sum_j layer_weights[j] * per_layer[j]."""
    mat = _as_matrix(per_layer)
    weights = np.asarray(mix.layer_weights, dtype=float)
    if mat.shape[0] != weights.size:
        raise ValueError(
            f"{mat.shape[0]} layer vectors but {weights.size} layer weights"
        )
    return mix.gamma * (weights @ mat)


# ---------------------------------------------------------------------------
# Static word vectors
# ---------------------------------------------------------------------------

@dataclass
class WordVectorTable:
    """Immutable word -> dense vector map loaded from a text file."""

    dimension: int
    entries: dict[str, np.ndarray]
    folded: dict[str, str] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.folded:
            # First occurrence wins for case-insensitive lookups.
            for key in self.entries:
                self.folded.setdefault(key.lower(), key)

    def __contains__(self, word: str) -> bool:
        return self.resolve(word) is not None

    def __len__(self):
        return len(self.entries)

    def resolve(self, token: str) -> Optional[str]:
        """Table key for a token: exact match, then case-insensitive."""
        if token in self.entries:
            return token
        folded = self.folded.get(token.lower())
        return folded

    def lookup(self, token: str) -> Optional[np.ndarray]:
        key = self.resolve(token)
        return self.entries[key] if key is not None else None


def load_vectors(path, vocabulary: Optional[set] = None) -> WordVectorTable:
    """Parse a text-format word-vector file.

    ``vocabulary`` restricts loading to the given surface forms (matched
    case-insensitively), which keeps memory bounded for large files.
    """
    path = Path(path)
    wanted = None
    if vocabulary is not None:
        wanted = {w.lower() for w in vocabulary}
    entries: dict[str, np.ndarray] = {}
    dimension = None
    try:
        handle = path.open("r", encoding="utf-8", errors="replace")
    except FileNotFoundError:
        raise VectorTableError("vector file not found", path=path)
    with handle:
        for lineno, line in enumerate(handle, start=1):
            parts = line.rstrip("\n").split(" ")
            parts = [p for p in parts if p != ""]
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2:
                try:
                    int(parts[0]), int(parts[1])
                    continue  # "<count> <dimension>" header
                except ValueError:
                    pass
            word, values = parts[0], parts[1:]
            if not values:
                raise VectorTableError("line has a word but no vector", path=path, line=lineno)
            if wanted is not None and word.lower() not in wanted:
                continue
            try:
                vec = np.asarray([float(v) for v in values], dtype=float)
            except ValueError:
                raise VectorTableError("non-numeric vector component", path=path, line=lineno)
            if not np.all(np.isfinite(vec)):
                raise VectorTableError("vector contains NaN or Inf", path=path, line=lineno)
            if dimension is None:
                dimension = vec.size
            elif vec.size != dimension:
                raise VectorTableError(
                    f"vector has {vec.size} components, expected {dimension}",
                    path=path,
                    line=lineno,
                )
            if word not in entries:  # first occurrence wins
                entries[word] = vec
    if not entries:
        raise VectorTableError("no vectors loaded", path=path)
    return WordVectorTable(dimension=dimension, entries=entries)


# ---------------------------------------------------------------------------
# Contextual cache
# ---------------------------------------------------------------------------

@dataclass
class ContextualCache:
    """Precomputed per-instance and per-sense vectors, optionally per layer."""

    dimension: int
    layers: int
    model: str
    instance_vectors: dict[str, np.ndarray] = field(default_factory=dict)
    sense_vectors: dict[tuple[str, int], np.ndarray] = field(default_factory=dict)

    def merge(self, other: "ContextualCache") -> None:
        if (other.dimension, other.layers) != (self.dimension, self.layers):
            raise CacheFormatError(
                f"cache shape mismatch: {other.dimension}x{other.layers} vs"
                f" {self.dimension}x{self.layers} ({other.model} vs {self.model})"
            )
        self.instance_vectors.update(other.instance_vectors)
        self.sense_vectors.update(other.sense_vectors)

    def coverage_gaps(self, dataset, word: str, split: str = "test"):
        """Missing instance ids and sense ids for a word, empty when complete."""
        data = dataset.words[word]
        missing_instances = [
            ins.instance_id
            for ins in data.split(split)
            if ins.instance_id not in self.instance_vectors
        ]
        missing_senses = [
            sid for sid in data.inventory.sense_ids if (word, sid) not in self.sense_vectors
        ]
        return missing_instances, missing_senses


def _parse_vectors(obj, dimension, layers, path, lineno) -> np.ndarray:
    vectors = obj.get("vectors")
    if not isinstance(vectors, list) or len(vectors) != layers:
        raise CacheFormatError(
            f"entry must carry exactly {layers} layer vectors", path=path, line=lineno
        )
    arr = np.asarray(vectors, dtype=float)
    if arr.shape != (layers, dimension):
        raise CacheFormatError(
            f"vectors have shape {arr.shape}, expected ({layers}, {dimension})",
            path=path,
            line=lineno,
        )
    if not np.all(np.isfinite(arr)):
        raise CacheFormatError("vector contains NaN or Inf", path=path, line=lineno)
    return arr


def load_cache(path) -> ContextualCache:
    """Read one JSON Lines cache file (header line first)."""
    path = Path(path)
    try:
        handle = path.open("r", encoding="utf-8")
    except FileNotFoundError:
        raise CacheFormatError("cache file not found", path=path)
    cache = None
    with handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CacheFormatError(f"invalid JSON: {exc.msg}", path=path, line=lineno)
            kind = obj.get("kind")
            if cache is None:
                if kind != "header":
                    raise CacheFormatError(
                        "first line must be the header object", path=path, line=lineno
                    )
                dimension, layers = obj.get("dimension"), obj.get("layers")
                if not isinstance(dimension, int) or dimension <= 0:
                    raise CacheFormatError("header dimension must be a positive int",
                                           path=path, line=lineno)
                if not isinstance(layers, int) or layers < 1:
                    raise CacheFormatError("header layers must be an int >= 1",
                                           path=path, line=lineno)
                cache = ContextualCache(
                    dimension=dimension, layers=layers, model=str(obj.get("model", ""))
                )
            elif kind == "instance":
                iid = obj.get("id")
                if not isinstance(iid, str) or not iid:
                    raise CacheFormatError("instance entry needs a string id",
                                           path=path, line=lineno)
                cache.instance_vectors[iid] = _parse_vectors(
                    obj, cache.dimension, cache.layers, path, lineno
                )
            elif kind == "sense":
                word, sid = obj.get("word"), obj.get("sense_id")
                if not isinstance(word, str) or not isinstance(sid, int):
                    raise CacheFormatError(
                        "sense entry needs a string word and integer sense_id",
                        path=path,
                        line=lineno,
                    )
                cache.sense_vectors[(word, sid)] = _parse_vectors(
                    obj, cache.dimension, cache.layers, path, lineno
                )
            else:
                raise CacheFormatError(f"unknown entry kind {kind!r}", path=path, line=lineno)
    if cache is None:
        raise CacheFormatError("cache file is empty", path=path)
    return cache


def load_cache_dir(directory, words: Optional[list[str]] = None) -> ContextualCache:
    """Merge per-word cache files (<word>.jsonl) from a directory."""
    directory = Path(directory)
    if directory.is_file():
        return load_cache(directory)
    if not directory.is_dir():
        raise CacheFormatError("cache path is neither a file nor a directory", path=directory)
    files = (
        [directory / f"{w}.jsonl" for w in sorted(words)]
        if words is not None
        else sorted(directory.glob("*.jsonl"))
    )
    if not files:
        raise CacheFormatError("no .jsonl cache files found", path=directory)
    merged = None
    for f in files:
        part = load_cache(f)
        if merged is None:
            merged = part
        else:
            merged.merge(part)
    return merged


def save_cache(cache: ContextualCache, path) -> None:
    """Write a cache back out in the JSON Lines format (used by fixtures)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        header = {
            "kind": "header",
            "model": cache.model,
            "dimension": cache.dimension,
            "layers": cache.layers,
        }
        handle.write(json.dumps(header) + "\n")
        for iid, arr in cache.instance_vectors.items():
            handle.write(
                json.dumps({"kind": "instance", "id": iid, "vectors": arr.tolist()}) + "\n"
            )
        for (word, sid), arr in cache.sense_vectors.items():
            handle.write(
                json.dumps(
                    {"kind": "sense", "word": word, "sense_id": sid, "vectors": arr.tolist()}
                )
                + "\n"
            )


# ---------------------------------------------------------------------------
# Providers
# ---------------------------------------------------------------------------

@dataclass
class StaticVectorProvider:
    """Context/sense vectors by pooling static word vectors over tokens.

    Unknown tokens are skipped; a text whose tokens are all unknown raises
    :class:`OovError` rather than emitting a zero vector (which would
    poison the downstream cosine).
    """

    table: WordVectorTable
    pooling: PoolingWeights = field(default_factory=PoolingWeights)

    def _pool_tokens(self, tokens, what: str) -> np.ndarray:
        known = [self.table.lookup(tok) for tok in tokens]
        known = [v for v in known if v is not None]
        if not known:
            raise OovError(f"all {len(tokens)} tokens of {what} are out of vocabulary")
        if self.pooling.mode == "uniform":
            return mean_pool(known)
        return weighted_pool(known, self.pooling)

    def context_vector(self, instance: Instance) -> np.ndarray:
        return self._pool_tokens(instance.tokens, f"instance {instance.instance_id}")

    def sense_vector(self, word: str, sense_id: int, inventory: SenseInventory) -> np.ndarray:
        descriptor = inventory.descriptor(sense_id)
        return self._pool_tokens(
            descriptor.split(), f"descriptor {word!r}/{sense_id} ({descriptor!r})"
        )


@dataclass
class CacheProvider:
    """Context/sense vectors from a contextual cache, layer-mixed."""

    cache: ContextualCache
    mix: Optional[LayerMix] = None

    def __post_init__(self):
        if self.mix is None:
            self.mix = LayerMix.uniform(self.cache.layers)
        elif len(self.mix.layer_weights) != self.cache.layers:
            raise ValueError(
                f"layer mix has {len(self.mix.layer_weights)} weights, cache stores"
                f" {self.cache.layers} layers"
            )

    def context_vector(self, instance: Instance) -> np.ndarray:
        arr = self.cache.instance_vectors.get(instance.instance_id)
        if arr is None:
            raise CoverageError(f"cache has no vectors for instance {instance.instance_id}")
        return mix_layers(arr, self.mix)

    def sense_vector(self, word: str, sense_id: int, inventory: SenseInventory) -> np.ndarray:
        arr = self.cache.sense_vectors.get((word, sense_id))
        if arr is None:
            raise CoverageError(f"cache has no vectors for sense {word!r}/{sense_id}")
        return mix_layers(arr, self.mix)


def embed_context(instance: Instance, provider) -> np.ndarray:
    """Vector for an instance's full sentence context."""
    return provider.context_vector(instance)


def embed_sense(word: str, sense_id: int, inventory: SenseInventory, provider) -> np.ndarray:
    """Vector for one sense descriptor of a word."""
    return provider.sense_vector(word, sense_id, inventory)
