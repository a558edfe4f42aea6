"""Shared fixtures: synthetic datasets, vector files, and caches."""

import json

import numpy as np
import pytest

from wsdsim import load_dataset


def write_word(root, word, labels, train, test):
    """Materialize one word directory in the benchmark's on-disk format.

    ``train`` and ``test`` are lists of (target_index, tokens, gold).
    """
    word_dir = root / word
    word_dir.mkdir(parents=True)
    (word_dir / "classes_map.txt").write_text(
        json.dumps({str(i): label for i, label in enumerate(labels)})
    )
    for split, rows in (("train", train), ("test", test)):
        data_lines = [f"{idx}\t{' '.join(tokens)}" for idx, tokens, _ in rows]
        gold_lines = [str(gold) for _, _, gold in rows]
        (word_dir / f"{split}.data.txt").write_text("".join(l + "\n" for l in data_lines))
        (word_dir / f"{split}.gold.txt").write_text("".join(l + "\n" for l in gold_lines))
    return word_dir


def write_vectors(path, entries, header=False):
    """Write a static word-vector text file from {word: vector}."""
    lines = []
    if header:
        dim = len(next(iter(entries.values())))
        lines.append(f"{len(entries)} {dim}")
    for word, vec in entries.items():
        lines.append(word + " " + " ".join(f"{float(x):.6f}" for x in vec))
    path.write_text("".join(l + "\n" for l in lines))
    return path


def write_cache(path, model, dimension, layers, instances=(), senses=()):
    """Write a JSON Lines cache file directly (independent of save_cache).

    ``instances``: iterable of (instance_id, vectors); ``senses``:
    iterable of (word, sense_id, vectors).  Vectors are per-layer lists.
    """
    lines = [json.dumps({"kind": "header", "model": model,
                         "dimension": dimension, "layers": layers})]
    for iid, vectors in instances:
        lines.append(json.dumps({"kind": "instance", "id": iid,
                                 "vectors": np.asarray(vectors, dtype=float).tolist()}))
    for word, sid, vectors in senses:
        lines.append(json.dumps({"kind": "sense", "word": word, "sense_id": sid,
                                 "vectors": np.asarray(vectors, dtype=float).tolist()}))
    path.write_text("".join(l + "\n" for l in lines))
    return path


@pytest.fixture
def toy_root(tmp_path):
    """Two-word benchmark with hand-checkable baseline arithmetic.

    alpha: 2 senses, train golds [0,0,1] (MFS=0), test golds [0,0,1,0]
           so MFS scores 3/4.
    beta:  3 senses, train golds [2,2,1,0] (MFS=2), test golds
           [2,1,2,2,0] so MFS scores 3/5.
    """
    root = tmp_path / "toy"
    root.mkdir()
    write_word(
        root,
        "alpha",
        ["alpha_metal", "alpha_animal"],
        train=[
            (0, ["alpha", "ore", "mine"], 0),
            (1, ["shiny", "alpha", "ingot"], 0),
            (0, ["alpha", "runs", "fast"], 1),
        ],
        test=[
            (0, ["alpha", "smelted", "metal"], 0),
            (2, ["forge", "the", "alpha"], 0),
            (1, ["wild", "alpha", "grazes"], 1),
            (0, ["alpha", "alloy", "bar"], 0),
        ],
    )
    write_word(
        root,
        "beta",
        ["beta_wave", "beta_fish", "beta_code"],
        train=[
            (0, ["beta", "release", "soon"], 2),
            (1, ["new", "beta", "build"], 2),
            (0, ["beta", "swims", "deep"], 1),
            (0, ["beta", "brain", "rhythm"], 0),
        ],
        test=[
            (0, ["beta", "version", "ships"], 2),
            (1, ["small", "beta", "tank"], 1),
            (2, ["install", "the", "beta"], 2),
            (0, ["beta", "testing", "phase"], 2),
            (1, ["calm", "beta", "waves"], 0),
        ],
    )
    return root


@pytest.fixture
def toy_dataset(toy_root):
    return load_dataset(toy_root)
