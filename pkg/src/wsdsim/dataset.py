"""Loading and validation of CoarseWSD-20 style lexical-sample data.

Directory layout, per target word under the dataset root:

    <root>/<word>/train.data.txt   one instance per line: "<target_index>\\t<tokens>"
    <root>/<word>/test.data.txt
    <root>/<word>/train.gold.txt   one integer sense id per line, aligned with data
    <root>/<word>/test.gold.txt
    <root>/<word>/classes_map.txt  JSON: {"0": "apple_inc", "1": "apple"}

Tokens are taken as already whitespace-tokenized; no further tokenization
happens here.  Instance ids follow the convention "<word>.<split>.<line>"
with a 0-based line index, which the contextual-cache format relies on.
"""

import json
import hashlib
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .errors import DatasetFormatError

logger = logging.getLogger(__name__)

SPLITS = ("train", "test")

# The 20 ambiguous nouns of the full benchmark.
COARSEWSD_WORDS = (
    "apple", "arm", "bank", "bass", "bow", "chair", "club", "crane",
    "deck", "digit", "hood", "java", "mole", "pitcher", "pound", "seal",
    "spring", "square", "trunk", "yard",
)


def instance_id(word: str, split: str, line_index: int) -> str:
    """Stable id for the instance on 0-based line ``line_index`` of a split."""
    return f"{word}.{split}.{line_index}"


@dataclass(frozen=True)
class Instance:
    """One tokenized sentence with a marked target-word position."""

    instance_id: str
    target_word: str
    target_index: int
    tokens: tuple[str, ...]
    gold_sense: Optional[int]
    split: str

    def __post_init__(self):
        if not self.tokens:
            raise DatasetFormatError(f"instance {self.instance_id}: empty token list")
        if not 0 <= self.target_index < len(self.tokens):
            raise DatasetFormatError(
                f"instance {self.instance_id}: target index {self.target_index} "
                f"outside sentence of {len(self.tokens)} tokens"
            )
        for tok in self.tokens:
            if not tok or any(ch.isspace() for ch in tok):
                raise DatasetFormatError(
                    f"instance {self.instance_id}: empty or whitespace-bearing token {tok!r}"
                )

    @property
    def sentence(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class Sense:
    sense_id: int
    label: str
    descriptor: str


@dataclass(frozen=True)
class SenseInventory:
    """Candidate senses for one target word, with descriptor texts."""

    target_word: str
    senses: tuple[Sense, ...]

    def __post_init__(self):
        ids = [s.sense_id for s in self.senses]
        if len(ids) < 2:
            raise DatasetFormatError(
                f"{self.target_word}: inventory needs at least 2 senses, got {len(ids)}"
            )
        if ids != list(range(len(ids))):
            raise DatasetFormatError(
                f"{self.target_word}: sense ids must be contiguous 0..{len(ids) - 1}, got {ids}"
            )
        labels = [s.label for s in self.senses]
        if len(set(labels)) != len(labels):
            raise DatasetFormatError(f"{self.target_word}: duplicate sense labels {labels}")
        for s in self.senses:
            if not s.descriptor.strip():
                raise DatasetFormatError(
                    f"{self.target_word}: sense {s.sense_id} has an empty descriptor"
                )

    def __len__(self):
        return len(self.senses)

    @property
    def sense_ids(self) -> list[int]:
        return [s.sense_id for s in self.senses]

    def descriptor(self, sense_id: int) -> str:
        return self.senses[sense_id].descriptor

    def label(self, sense_id: int) -> str:
        return self.senses[sense_id].label


@dataclass(frozen=True)
class WordData:
    inventory: SenseInventory
    train: tuple[Instance, ...]
    test: tuple[Instance, ...]

    def split(self, name: str) -> tuple[Instance, ...]:
        if name not in SPLITS:
            raise ValueError(f"unknown split {name!r}")
        return self.train if name == "train" else self.test


@dataclass(frozen=True)
class Dataset:
    """Immutable view of a loaded benchmark: word -> inventory + instances."""

    root: str
    words: dict[str, WordData] = field(default_factory=dict)

    def word_list(self) -> list[str]:
        return sorted(self.words)

    def instances(self, split: str = "test", words=None):
        for word in sorted(words) if words is not None else self.word_list():
            yield from self.words[word].split(split)

    def instance_count(self, split: str = "test", words=None) -> int:
        return sum(1 for _ in self.instances(split, words))


def normalize_label(label: str) -> str:
    """Default descriptor text: underscores to spaces, lowercased."""
    return " ".join(label.replace("_", " ").split()).lower()


def build_sense_descriptors(
    inventory: SenseInventory, overrides: Optional[dict[int, str]] = None
) -> SenseInventory:
    """Re-derive descriptor texts from labels, applying any overrides.

    An override replaces the normalized label verbatim; overriding a sense
    id that does not exist is an error.
    """
    overrides = dict(overrides or {})
    known = set(inventory.sense_ids)
    for sid in overrides:
        if sid not in known:
            raise DatasetFormatError(
                f"{inventory.target_word}: descriptor override for unknown sense id {sid}"
            )
    senses = tuple(
        replace(s, descriptor=overrides.get(s.sense_id, normalize_label(s.label)))
        for s in inventory.senses
    )
    return replace(inventory, senses=senses)


def load_descriptor_overrides(path) -> dict[str, dict[int, str]]:
    """Read an override file: {"<word>": {"<sense_id>": "<descriptor>"}}."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DatasetFormatError("override file not found", path=path)
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"override file is not valid JSON: {exc}", path=path)
    if not isinstance(raw, dict):
        raise DatasetFormatError("override file must be a JSON object", path=path)
    out: dict[str, dict[int, str]] = {}
    for word, mapping in raw.items():
        if not isinstance(mapping, dict):
            raise DatasetFormatError(f"overrides for {word!r} must be an object", path=path)
        per_word = {}
        for sid, text in mapping.items():
            try:
                sid_int = int(sid)
            except (TypeError, ValueError):
                raise DatasetFormatError(
                    f"overrides for {word!r}: sense id {sid!r} is not an integer", path=path
                )
            if not isinstance(text, str) or not text.strip():
                raise DatasetFormatError(
                    f"overrides for {word!r}: descriptor for sense {sid} must be a"
                    " non-empty string",
                    path=path,
                )
            per_word[sid_int] = text
        out[word] = per_word
    return out


def _read_classes_map(path: Path) -> list[str]:
    """Parse classes_map.txt into labels ordered by sense id."""
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DatasetFormatError("missing classes map", path=path)
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"classes map is not valid JSON: {exc}", path=path)
    if not isinstance(raw, dict) or not raw:
        raise DatasetFormatError("classes map must be a non-empty JSON object", path=path)
    by_id = {}
    for key, label in raw.items():
        try:
            sid = int(key)
        except (TypeError, ValueError):
            raise DatasetFormatError(f"sense id {key!r} is not an integer", path=path)
        if not isinstance(label, str) or not label.strip():
            raise DatasetFormatError(f"label for sense {sid} must be a non-empty string", path=path)
        if sid in by_id:
            raise DatasetFormatError(f"duplicate sense id {sid}", path=path)
        by_id[sid] = label
    expected = list(range(len(by_id)))
    if sorted(by_id) != expected:
        raise DatasetFormatError(
            f"sense ids must be contiguous 0..{len(by_id) - 1}, got {sorted(by_id)}", path=path
        )
    return [by_id[i] for i in expected]


def _read_data_lines(path: Path, word: str, split: str) -> list[tuple[int, list[str]]]:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DatasetFormatError("missing data file", path=path)
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if "\t" not in line:
            raise DatasetFormatError(
                "expected '<target_index>\\t<tokens>' (no tab found)", path=path, line=lineno
            )
        index_field, _, token_field = line.partition("\t")
        try:
            target_index = int(index_field)
        except ValueError:
            raise DatasetFormatError(
                f"target index {index_field!r} is not an integer", path=path, line=lineno
            )
        tokens = token_field.split()
        if not tokens:
            raise DatasetFormatError("no tokens after the tab", path=path, line=lineno)
        if not 0 <= target_index < len(tokens):
            raise DatasetFormatError(
                f"target index {target_index} outside sentence of {len(tokens)} tokens",
                path=path,
                line=lineno,
            )
        rows.append((target_index, tokens))
    return rows


def _read_gold_lines(path: Path, n_senses: int) -> list[int]:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DatasetFormatError("missing gold file", path=path)
    golds = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        try:
            sid = int(stripped)
        except ValueError:
            raise DatasetFormatError(
                f"gold label {stripped!r} is not an integer", path=path, line=lineno
            )
        if not 0 <= sid < n_senses:
            raise DatasetFormatError(
                f"gold sense {sid} not present in the classes map (0..{n_senses - 1})",
                path=path,
                line=lineno,
            )
        golds.append(sid)
    return golds


def _load_word(word_dir: Path, overrides: Optional[dict[int, str]]) -> WordData:
    word = word_dir.name.lower()
    labels = _read_classes_map(word_dir / "classes_map.txt")
    inventory = SenseInventory(
        target_word=word,
        senses=tuple(Sense(i, label, normalize_label(label)) for i, label in enumerate(labels)),
    )
    inventory = build_sense_descriptors(inventory, overrides)

    splits: dict[str, tuple[Instance, ...]] = {}
    for split in SPLITS:
        data_path = word_dir / f"{split}.data.txt"
        gold_path = word_dir / f"{split}.gold.txt"
        rows = _read_data_lines(data_path, word, split)
        golds = _read_gold_lines(gold_path, len(inventory))
        if len(rows) != len(golds):
            raise DatasetFormatError(
                f"{len(rows)} data lines but {len(golds)} gold lines for {word}/{split}",
                path=gold_path,
            )
        splits[split] = tuple(
            Instance(
                instance_id=instance_id(word, split, i),
                target_word=word,
                target_index=target_index,
                tokens=tuple(tokens),
                gold_sense=gold,
                split=split,
            )
            for i, ((target_index, tokens), gold) in enumerate(zip(rows, golds))
        )
    return WordData(inventory=inventory, train=splits["train"], test=splits["test"])


def load_dataset(
    root_dir,
    word_filter: Optional[list[str]] = None,
    overrides: Optional[dict[str, dict[int, str]]] = None,
    require_full: bool = False,
) -> Dataset:
    """Load every word subdirectory under ``root_dir`` (or just ``word_filter``).

    ``overrides`` maps word -> sense id -> descriptor text, as produced by
    :func:`load_descriptor_overrides`.  With ``require_full`` the loader
    insists on all 20 benchmark words being present.
    """
    root = Path(root_dir)
    if not root.is_dir():
        raise DatasetFormatError("dataset root is not a directory", path=root)

    available = sorted(p.name for p in root.iterdir() if p.is_dir())
    if word_filter is not None:
        missing = sorted(set(word_filter) - set(available))
        if missing:
            raise DatasetFormatError(
                f"word subdirectories not found: {', '.join(missing)}", path=root
            )
        selected = sorted(set(word_filter))
    else:
        selected = available
    if not selected:
        raise DatasetFormatError("no word subdirectories found", path=root)
    if require_full:
        missing = sorted(set(COARSEWSD_WORDS) - set(selected))
        if missing:
            raise DatasetFormatError(
                f"full benchmark requested but words missing: {', '.join(missing)}", path=root
            )

    overrides = overrides or {}
    words = {}
    for word in selected:
        words[word.lower()] = _load_word(root / word, overrides.get(word.lower()))
        logger.info(
            "loaded %s: %d senses, %d train, %d test",
            word,
            len(words[word.lower()].inventory),
            len(words[word.lower()].train),
            len(words[word.lower()].test),
        )
    return Dataset(root=str(root), words=words)


def save_dataset(dataset: Dataset, root_dir) -> None:
    """Write a Dataset back out in the on-disk format it was loaded from."""
    root = Path(root_dir)
    for word, data in dataset.words.items():
        word_dir = root / word
        word_dir.mkdir(parents=True, exist_ok=True)
        labels = {str(s.sense_id): s.label for s in data.inventory.senses}
        (word_dir / "classes_map.txt").write_text(
            json.dumps(labels, indent=4) + "\n", encoding="utf-8"
        )
        for split in SPLITS:
            instances = data.split(split)
            data_lines = [f"{ins.target_index}\t{' '.join(ins.tokens)}" for ins in instances]
            gold_lines = [str(ins.gold_sense) for ins in instances]
            (word_dir / f"{split}.data.txt").write_text(
                "".join(line + "\n" for line in data_lines), encoding="utf-8"
            )
            (word_dir / f"{split}.gold.txt").write_text(
                "".join(line + "\n" for line in gold_lines), encoding="utf-8"
            )


def dataset_fingerprint(dataset: Dataset) -> str:
    """Short stable digest of the dataset shape, used to match reports."""
    h = hashlib.sha256()
    for word in dataset.word_list():
        data = dataset.words[word]
        h.update(
            f"{word}:{len(data.inventory)}:{len(data.train)}:{len(data.test)}\n".encode("utf-8")
        )
    return h.hexdigest()[:16]
