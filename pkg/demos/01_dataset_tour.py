"""
A tour of the dataset layout
============================

Builds a two-word toy dataset on disk, loads it, and walks through the
structures the rest of the library consumes.
"""

import json
import tempfile
from pathlib import Path

from wsdsim import dataset_fingerprint, load_dataset, save_dataset

# ---------------------------------------------------------------------------
# The on-disk layout: one directory per ambiguous word.
#
#   <root>/<word>/classes_map.txt   {"0": "label", "1": "label", ...}
#   <root>/<word>/train.data.txt    "<target_index>\t<tok> <tok> ..." per line
#   <root>/<word>/train.gold.txt    one sense id per line
#   <root>/<word>/test.data.txt     same shape as train
#   <root>/<word>/test.gold.txt
# ---------------------------------------------------------------------------

root = Path(tempfile.mkdtemp(prefix="wsdsim-demo-")) / "dataset"

words = {
    "bolt": {
        "labels": ["Bolt_Fastener", "Bolt_Lightning"],
        "train": [(0, "bolt holds the beam", 0), (1, "a bolt split the oak", 1),
                  (0, "bolt threaded through steel", 0)],
        "test": [(2, "tighten the bolt firmly", 0), (1, "the bolt lit the sky", 1)],
    },
    "mint": {
        "labels": ["Mint_Herb", "Mint_Coin_Facility"],
        "train": [(0, "mint leaves in tea", 0), (1, "the mint strikes coins", 1)],
        "test": [(0, "mint garnish on dessert", 0), (1, "royal mint security", 1),
                 (2, "fresh cut mint", 0)],
    },
}

for word, info in words.items():
    word_dir = root / word
    word_dir.mkdir(parents=True)
    labels = {str(i): label for i, label in enumerate(info["labels"])}
    (word_dir / "classes_map.txt").write_text(json.dumps(labels))
    for split in ("train", "test"):
        rows = info[split]
        (word_dir / f"{split}.data.txt").write_text(
            "".join(f"{idx}\t{text}\n" for idx, text, _ in rows))
        (word_dir / f"{split}.gold.txt").write_text(
            "".join(f"{gold}\n" for _, _, gold in rows))

print(f"wrote toy dataset under {root}")

# ---------------------------------------------------------------------------
# Loading gives one WordData per word: a sense inventory plus both splits.
# ---------------------------------------------------------------------------

ds = load_dataset(root)
print(f"\nloaded {len(ds.words)} words: {', '.join(ds.words)}")

for word, data in ds.words.items():
    print(f"\n=== {word} ===")
    for sense in data.inventory.senses:
        # descriptor = the label, lowercased, underscores out
        print(f"  sense {sense.sense_id}: label={sense.label!r} descriptor={sense.descriptor!r}")
    for ins in data.test:
        marked = list(ins.tokens)
        marked[ins.target_index] = f"[{marked[ins.target_index]}]"
        print(f"  {ins.instance_id}: gold={ins.gold_sense}  {' '.join(marked)}")

# ---------------------------------------------------------------------------
# Instance ids are "<word>.<split>.<line>" with 0-based lines, so any file
# produced against this dataset (vector caches, reports) can name instances
# unambiguously.
# ---------------------------------------------------------------------------

first = ds.words["bolt"].test[0]
print(f"\nfirst bolt test instance id: {first.instance_id}")

# ---------------------------------------------------------------------------
# The fingerprint hashes word names, sense counts, and split sizes. Reports
# carry it so two runs can be compared apples-to-apples.
# ---------------------------------------------------------------------------

print(f"dataset fingerprint: {dataset_fingerprint(ds)}")

# Round-trip: saving and reloading reproduces the same fingerprint.
copy_root = root.parent / "copy"
save_dataset(ds, copy_root)
assert dataset_fingerprint(load_dataset(copy_root)) == dataset_fingerprint(ds)
print("round-trip save/load keeps the fingerprint stable")
