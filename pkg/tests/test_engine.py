import math

import numpy as np
import pytest

from wsdsim import (
    ContextualCache,
    CoverageError,
    GoldPredictor,
    Instance,
    MfsPredictor,
    RandomPredictor,
    Sense,
    SenseInventory,
    SimilarityPredictor,
    WsdsimError,
    argmax_sense,
    cosine_cache_measure,
    disambiguate,
    expected_random_accuracy,
    fit_mfs,
    instance_id,
    load_dataset,
    predict_random,
)
from conftest import write_word


class TestArgmaxSense:
    def test_plain_argmax(self):
        assert argmax_sense({0: 0.9, 1: 0.2}) == 0
        assert argmax_sense({0: 0.2, 1: 0.9}) == 1

    def test_tie_breaks_to_lowest_id(self):
        assert argmax_sense({0: 0.5, 1: 0.5}) == 0
        assert argmax_sense({2: 1.0, 0: 0.4, 1: 1.0}) == 1

    def test_invariant_under_increasing_transforms(self):
        rng = np.random.default_rng(137)
        transforms = [lambda x: 2 * x + 1, math.exp, lambda x: x ** 3,
                      lambda x: math.atan(x)]
        for _ in range(50):
            scores = {sid: float(v) for sid, v in
                      enumerate(rng.normal(size=rng.integers(2, 6)))}
            base = argmax_sense(scores)
            for f in transforms:
                assert argmax_sense({s: f(v) for s, v in scores.items()}) == base


class TestDisambiguate:
    def _setup(self):
        inv = SenseInventory("w", (Sense(0, "a", "a"), Sense(1, "b", "b"),
                                   Sense(2, "c", "c")))
        cache = ContextualCache(dimension=2, layers=1, model="m")
        cache.instance_vectors["w.test.0"] = np.array([[3.0, 4.0]])
        cache.sense_vectors[("w", 0)] = np.array([[1.0, 0.0]])   # cos 0.6
        cache.sense_vectors[("w", 1)] = np.array([[0.0, 2.0]])   # cos 0.8
        cache.sense_vectors[("w", 2)] = np.array([[-3.0, -4.0]])  # cos -1.0
        ins = Instance("w.test.0", "w", 0, ("w",), None, "test")
        return ins, inv, cosine_cache_measure(cache)

    def test_picks_nearest_sense(self):
        ins, inv, measure = self._setup()
        pred = disambiguate(ins, inv, measure)
        assert pred.predicted_sense == 1
        assert pred.strategy == "cosine_cache"
        assert sorted(pred.per_sense_scores) == [0, 1, 2]
        np.testing.assert_allclose(
            [pred.per_sense_scores[s] for s in (0, 1, 2)], [0.6, 0.8, -1.0], atol=1e-9
        )

    def test_unscorable_sense_aborts_instance(self):
        ins, inv, measure = self._setup()
        del measure.provider.cache.sense_vectors[("w", 2)]
        with pytest.raises(CoverageError):
            disambiguate(ins, inv, measure)


class TestFitMfs:
    def test_counts_and_argmax(self, toy_dataset):
        model = fit_mfs(toy_dataset)
        assert model.top_sense == {"alpha": 0, "beta": 2}
        assert model.frequencies["alpha"] == {0: 2, 1: 1}
        assert model.frequencies["beta"] == {0: 1, 1: 1, 2: 2}
        assert sum(model.frequencies["alpha"].values()) == len(
            toy_dataset.words["alpha"].train
        )

    def test_tie_breaks_to_lowest_id(self, tmp_path):
        root = tmp_path / "d"
        root.mkdir()
        rows = [(0, ["tied", "x"], g) for g in (1, 1, 0, 0)]
        write_word(root, "tied", ["t_a", "t_b"], train=rows, test=rows[:1])
        model = fit_mfs(load_dataset(root))
        assert model.top_sense["tied"] == 0

    def test_empty_train_split_rejected(self, tmp_path):
        root = tmp_path / "d"
        root.mkdir()
        write_word(root, "bare", ["b_a", "b_b"], train=[],
                   test=[(0, ["bare"], 0)])
        with pytest.raises(WsdsimError, match="empty training split"):
            fit_mfs(load_dataset(root))

    def test_predictor_is_constant_per_word(self, toy_dataset):
        predictor = MfsPredictor(fit_mfs(toy_dataset))
        data = toy_dataset.words["beta"]
        preds = {predictor.predict(i, data.inventory).predicted_sense
                 for i in data.test}
        assert preds == {2}

    def test_predictor_rejects_unfitted_word(self, toy_dataset):
        predictor = MfsPredictor(fit_mfs(toy_dataset, words=["alpha"]))
        ins = toy_dataset.words["beta"].test[0]
        with pytest.raises(WsdsimError, match="not fitted"):
            predictor.predict(ins, toy_dataset.words["beta"].inventory)


def _instances(word, k, count, gold=0):
    inv = SenseInventory(word, tuple(Sense(i, f"{word}_{i}", f"{word} {i}")
                                     for i in range(k)))
    ins = [Instance(instance_id(word, "test", i), word, 0, (word,), gold, "test")
           for i in range(count)]
    return inv, ins


class TestPredictRandom:
    def test_deterministic_per_seed(self):
        inv, instances = _instances("w", 3, 200)
        first = [predict_random(i, inv, 42).predicted_sense for i in instances]
        second = [predict_random(i, inv, 42).predicted_sense for i in instances]
        assert first == second
        other = [predict_random(i, inv, 43).predicted_sense for i in instances]
        assert first != other

    def test_order_independent(self):
        inv, instances = _instances("w", 4, 100)
        forward = {i.instance_id: predict_random(i, inv, 7).predicted_sense
                   for i in instances}
        backward = {i.instance_id: predict_random(i, inv, 7).predicted_sense
                    for i in reversed(instances)}
        assert forward == backward

    def test_choices_cover_inventory(self):
        inv, instances = _instances("w", 3, 300)
        seen = {predict_random(i, inv, 5).predicted_sense for i in instances}
        assert seen == {0, 1, 2}

    def test_scores_mark_the_choice(self):
        inv, instances = _instances("w", 2, 1)
        pred = predict_random(instances[0], inv, 1)
        assert pred.per_sense_scores[pred.predicted_sense] == 1.0
        assert sum(pred.per_sense_scores.values()) == 1.0
        assert pred.strategy == "random"

    @pytest.mark.parametrize("k", [2, 3])
    def test_hit_rate_near_uniform(self, k):
        n = 2000
        inv, instances = _instances("w", k, n, gold=0)
        hits = sum(predict_random(i, inv, 99).predicted_sense == i.gold_sense
                   for i in instances)
        bound = 3 * math.sqrt(0.25 / n)
        assert abs(hits / n - 1 / k) < bound


class TestExpectedRandomAccuracy:
    def test_single_word_two_senses(self, tmp_path):
        root = tmp_path / "d"
        root.mkdir()
        rows = [(0, ["coin", "x"], 0) for _ in range(10)]
        write_word(root, "coin", ["c_a", "c_b"], train=rows[:1], test=rows)
        assert expected_random_accuracy(load_dataset(root)) == 0.5

    def test_two_words_closed_form(self, tmp_path):
        root = tmp_path / "d"
        root.mkdir()
        rows2 = [(0, ["pair", "x"], 0) for _ in range(10)]
        rows5 = [(0, ["penta", "x"], 0) for _ in range(10)]
        write_word(root, "pair", ["p_a", "p_b"], train=rows2[:1], test=rows2)
        write_word(root, "penta", [f"q_{i}" for i in range(5)],
                   train=rows5[:1], test=rows5)
        # (10/2 + 10/5) / 20 = 0.35
        assert expected_random_accuracy(load_dataset(root)) == 0.35

    def test_toy_fixture_value(self, toy_dataset):
        assert abs(expected_random_accuracy(toy_dataset) - 11 / 27) < 1e-12

    def test_train_split_variant(self, toy_dataset):
        # 3/2 + 4/3 over 7
        want = (3 / 2 + 4 / 3) / 7
        got = expected_random_accuracy(toy_dataset, split="train")
        assert abs(got - want) < 1e-12


class TestPredictorObjects:
    def test_gold_oracle_echoes_gold(self, toy_dataset):
        predictor = GoldPredictor()
        data = toy_dataset.words["alpha"]
        for ins in data.test:
            pred = predictor.predict(ins, data.inventory)
            assert pred.predicted_sense == ins.gold_sense

    def test_gold_oracle_needs_gold(self):
        predictor = GoldPredictor()
        inv, _ = _instances("w", 2, 1)
        bare = Instance("w.test.0", "w", 0, ("w",), None, "test")
        with pytest.raises(WsdsimError, match="no gold sense"):
            predictor.predict(bare, inv)

    def test_similarity_predictor_default_name(self):
        cache = ContextualCache(dimension=1, layers=1, model="m")
        predictor = SimilarityPredictor(cosine_cache_measure(cache))
        assert predictor.name == "cosine_cache"

    def test_random_predictor_delegates(self):
        inv, instances = _instances("w", 3, 50)
        predictor = RandomPredictor(seed=11)
        for ins in instances:
            assert (predictor.predict(ins, inv).predicted_sense
                    == predict_random(ins, inv, 11).predicted_sense)
