"""Disambiguation rule and the two reference baselines.

Every predictor returns a :class:`Prediction` whose ``predicted_sense``
maximizes its per-sense scores, with ties broken by the lowest sense id.
The random baseline derives one sub-seed per (seed, instance id) pair so
that parallel and serial evaluation produce identical output.
"""

import hashlib
import random
from collections import Counter
from dataclasses import dataclass

from .dataset import Dataset, Instance, SenseInventory
from .errors import WsdsimError
from .similarity import SimilarityMeasure, score


@dataclass(frozen=True)
class Prediction:
    instance_id: str
    predicted_sense: int
    per_sense_scores: dict[int, float]
    strategy: str


def argmax_sense(scores: dict[int, float]) -> int:
    """Highest-scoring sense id; ties resolve to the lowest id."""
    best = None
    best_score = None
    for sid in sorted(scores):
        s = scores[sid]
        if best is None or s > best_score:
            best, best_score = sid, s
    return best


def disambiguate(
    instance: Instance, inventory: SenseInventory, measure: SimilarityMeasure
) -> Prediction:
    """Score every candidate sense and pick the argmax; never abstains.

    Any unscorable sense aborts the whole instance: a partial argmax over
    the remaining senses would silently bias the choice.
    """
    scores = {}
    for sid in inventory.sense_ids:
        scores[sid] = score(measure, instance, instance.target_word, sid, inventory).value
    return Prediction(
        instance_id=instance.instance_id,
        predicted_sense=argmax_sense(scores),
        per_sense_scores=scores,
        strategy=measure.kind,
    )


# ---------------------------------------------------------------------------
# Baselines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MfsModel:
    """Per-word training-split sense frequencies and their argmax."""

    frequencies: dict[str, dict[int, int]]
    top_sense: dict[str, int]


def fit_mfs(dataset: Dataset, words=None) -> MfsModel:
    """Most frequent training sense per word, ties to the lowest sense id."""
    frequencies = {}
    top = {}
    for word in sorted(words) if words is not None else dataset.word_list():
        data = dataset.words[word]
        if not data.train:
            raise WsdsimError(f"cannot fit MFS for {word!r}: empty training split")
        counts = Counter(ins.gold_sense for ins in data.train)
        frequencies[word] = {sid: counts.get(sid, 0) for sid in data.inventory.sense_ids}
        top[word] = argmax_sense({sid: float(c) for sid, c in frequencies[word].items()})
    return MfsModel(frequencies=frequencies, top_sense=top)


def _instance_seed(seed: int, instance_id: str) -> int:
    digest = hashlib.blake2b(f"{seed}|{instance_id}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def predict_random(instance: Instance, inventory: SenseInventory, rng_seed: int) -> Prediction:
    """Uniform choice over sense ids, reproducible per (seed, instance)."""
    rng = random.Random(_instance_seed(rng_seed, instance.instance_id))
    choice = rng.randrange(len(inventory))
    scores = {sid: 1.0 if sid == choice else 0.0 for sid in inventory.sense_ids}
    return Prediction(
        instance_id=instance.instance_id,
        predicted_sense=choice,
        per_sense_scores=scores,
        strategy="random",
    )


def expected_random_accuracy(dataset: Dataset, words=None, split: str = "test") -> float:
    """Closed-form random-baseline accuracy: sum_w n_w/k_w over sum_w n_w."""
    total = 0
    expected_hits = 0.0
    for word in sorted(words) if words is not None else dataset.word_list():
        data = dataset.words[word]
        n = len(data.split(split))
        total += n
        expected_hits += n / len(data.inventory)
    if total == 0:
        raise WsdsimError("no instances to evaluate")
    return expected_hits / total


# ---------------------------------------------------------------------------
# Predictor objects consumed by the evaluation harness
# ---------------------------------------------------------------------------

@dataclass
class SimilarityPredictor:
    measure: SimilarityMeasure
    name: str = ""

    def __post_init__(self):
        if not self.name:
            self.name = self.measure.kind

    def predict(self, instance: Instance, inventory: SenseInventory) -> Prediction:
        return disambiguate(instance, inventory, self.measure)


@dataclass
class MfsPredictor:
    model: MfsModel
    name: str = "mfs"

    def predict(self, instance: Instance, inventory: SenseInventory) -> Prediction:
        word = instance.target_word
        if word not in self.model.top_sense:
            raise WsdsimError(f"MFS model was not fitted for word {word!r}")
        scores = {sid: float(c) for sid, c in self.model.frequencies[word].items()}
        return Prediction(
            instance_id=instance.instance_id,
            predicted_sense=self.model.top_sense[word],
            per_sense_scores=scores,
            strategy=self.name,
        )


@dataclass
class RandomPredictor:
    seed: int
    name: str = "random"

    def predict(self, instance: Instance, inventory: SenseInventory) -> Prediction:
        return predict_random(instance, inventory, self.seed)


@dataclass
class GoldPredictor:
    """Upper-bound oracle that echoes the gold label (testing aid)."""

    name: str = "gold-oracle"

    def predict(self, instance: Instance, inventory: SenseInventory) -> Prediction:
        if instance.gold_sense is None:
            raise WsdsimError(f"instance {instance.instance_id} has no gold sense")
        scores = {
            sid: 1.0 if sid == instance.gold_sense else 0.0 for sid in inventory.sense_ids
        }
        return Prediction(
            instance_id=instance.instance_id,
            predicted_sense=instance.gold_sense,
            per_sense_scores=scores,
            strategy=self.name,
        )
