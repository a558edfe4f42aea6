"""Command-line entry point.

Subcommands:

* ``evaluate``      run a disambiguation strategy over a dataset split
* ``disambiguate``  score one sentence against a word's senses
* ``cache-info``    inspect a contextual cache, optionally vs a dataset

Configuration precedence is flags > JSON config file > environment
(WSDSIM_DATASET_ROOT, WSDSIM_CACHE_DIR) > defaults.  Logging goes to
stderr; report data goes to files or stdout only.
"""

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import evaluation
from .dataset import Instance, load_dataset, load_descriptor_overrides
from .embedding import LayerMix, PoolingWeights, load_cache_dir, load_vectors
from .engine import MfsPredictor, RandomPredictor, SimilarityPredictor, fit_mfs
from .errors import (
    CacheFormatError,
    ConfigError,
    CoverageError,
    DatasetFormatError,
    SolverError,
    VectorTableError,
    WsdsimError,
)
from .similarity import cosine_cache_measure, cosine_static_measure, wmd_measure

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_COVERAGE = 4
EXIT_SOLVER = 5

EXIT_CODE_HELP = """\
exit codes:
  0  run completed, report written
  2  invalid usage or configuration
  3  missing, unreadable, or malformed input file
  4  coverage gaps: strict-mode misses (report still written) or a cache lookup failure
  5  transport solver failed to converge
"""

METHODS = ("mfs", "random", "cosine-cache", "cosine-static", "wmd")


@dataclass
class RunConfig:
    """Effective configuration after merging flags, file, and environment."""

    dataset: Optional[str] = None
    method: Optional[str] = None
    vectors: Optional[str] = None
    cache: Optional[str] = None
    overrides: Optional[str] = None
    pooling: str = "uniform"
    pooling_vector: Optional[str] = None
    gamma: float = 1.0
    layer_weights: Optional[list[float]] = None
    seed: Optional[int] = None
    mode: str = "strict"
    words: Optional[list[str]] = None
    jobs: int = 1
    out_json: str = "-"
    out_table: Optional[str] = None
    plot_csv: Optional[str] = None

    def validate(self):
        if self.dataset is None:
            raise ConfigError("no dataset root given (flag --dataset, config file,"
                              " or WSDSIM_DATASET_ROOT)")
        if self.method not in METHODS:
            raise ConfigError(f"--method must be one of {', '.join(METHODS)}")
        if self.method in ("wmd", "cosine-static") and not self.vectors:
            raise ConfigError(f"method {self.method} requires --vectors")
        if self.method == "cosine-cache" and not self.cache:
            raise ConfigError("method cosine-cache requires --cache"
                              " (flag or WSDSIM_CACHE_DIR)")
        if self.method == "random" and self.seed is None:
            raise ConfigError("method random requires --seed")
        if self.pooling == "softmax" and not self.pooling_vector:
            raise ConfigError("softmax pooling requires --pooling-vector")

    def provenance(self) -> dict:
        """Fields embedded in reports; excludes output paths and job count
        so that reports stay comparable across machines and pool sizes."""
        return {
            "dataset": self.dataset,
            "method": self.method,
            "vectors": self.vectors,
            "cache": self.cache,
            "overrides": self.overrides,
            "pooling": self.pooling,
            "gamma": self.gamma,
            "layer_weights": self.layer_weights,
            "seed": self.seed,
            "mode": self.mode,
            "words": self.words,
        }


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise ConfigError(f"expected comma-separated floats, got {text!r}")


def _merge_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    file_values = {}
    if args.config:
        try:
            file_values = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {args.config}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}")
        if not isinstance(file_values, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(file_values) - set(vars(cfg))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")

    env_values = {}
    if os.environ.get("WSDSIM_DATASET_ROOT"):
        env_values["dataset"] = os.environ["WSDSIM_DATASET_ROOT"]
    if os.environ.get("WSDSIM_CACHE_DIR"):
        env_values["cache"] = os.environ["WSDSIM_CACHE_DIR"]

    for name in vars(cfg):
        flag = getattr(args, name, None)
        if flag is not None:
            setattr(cfg, name, flag)
        elif name in file_values:
            setattr(cfg, name, file_values[name])
        elif name in env_values:
            setattr(cfg, name, env_values[name])

    if isinstance(cfg.words, str):
        cfg.words = [w for w in cfg.words.split(",") if w]
    if isinstance(cfg.layer_weights, str):
        cfg.layer_weights = _parse_float_list(cfg.layer_weights)
    return cfg


def _build_predictor(cfg: RunConfig, dataset):
    if cfg.method == "mfs":
        return MfsPredictor(model=fit_mfs(dataset, words=cfg.words))
    if cfg.method == "random":
        return RandomPredictor(seed=cfg.seed)
    if cfg.method in ("cosine-static", "wmd"):
        table = load_vectors(cfg.vectors, vocabulary=_dataset_vocabulary(dataset))
        if cfg.method == "wmd":
            return SimilarityPredictor(measure=wmd_measure(table))
        pooling = _build_pooling(cfg)
        return SimilarityPredictor(measure=cosine_static_measure(table, pooling))
    cache = load_cache_dir(cfg.cache, words=cfg.words or None)
    try:
        mix = None
        if cfg.layer_weights is not None:
            mix = LayerMix(gamma=cfg.gamma, layer_weights=tuple(cfg.layer_weights))
        elif cfg.gamma != 1.0:
            mix = LayerMix.uniform(cache.layers, gamma=cfg.gamma)
        measure = cosine_cache_measure(cache, mix)
    except ValueError as exc:
        raise ConfigError(str(exc))
    predictor = SimilarityPredictor(measure=measure)
    predictor.config = {"cache_model": cache.model}
    return predictor


def _build_pooling(cfg: RunConfig) -> PoolingWeights:
    if cfg.pooling == "uniform":
        return PoolingWeights()
    try:
        w = json.loads(Path(cfg.pooling_vector).read_text(encoding="utf-8"))
        return PoolingWeights(mode="softmax", w=w)
    except FileNotFoundError:
        raise ConfigError(f"pooling-vector file not found: {cfg.pooling_vector}")
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise ConfigError(f"invalid pooling vector: {exc}")


def _dataset_vocabulary(dataset) -> set:
    vocab = set()
    for word in dataset.word_list():
        data = dataset.words[word]
        for split in ("train", "test"):
            for ins in data.split(split):
                vocab.update(ins.tokens)
        for sense in data.inventory.senses:
            vocab.update(sense.descriptor.split())
    return vocab


def _write_output(text: str, target: Optional[str]):
    if target is None:
        return
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def cmd_evaluate(args) -> int:
    cfg = _merge_config(args)
    cfg.validate()
    overrides = load_descriptor_overrides(cfg.overrides) if cfg.overrides else None
    dataset = load_dataset(cfg.dataset, word_filter=cfg.words, overrides=overrides)

    started = time.monotonic()
    predictor = _build_predictor(cfg, dataset)
    report = evaluation.evaluate(
        dataset, predictor, mode=cfg.mode, words=cfg.words, jobs=cfg.jobs
    )
    report.config.update(cfg.provenance())
    elapsed = time.monotonic() - started
    logger.info("evaluated %d instances in %.2fs", report.global_result.instances, elapsed)

    _write_output(evaluation.report_to_json(report), cfg.out_json)
    _write_output(evaluation.render_report_table(report), cfg.out_table)
    if cfg.plot_csv:
        mfs_report = evaluation.evaluate(
            dataset, MfsPredictor(model=fit_mfs(dataset, words=cfg.words)), words=cfg.words
        )
        ro_report = evaluation.expected_random_report(dataset, words=cfg.words)
        _write_output(evaluation.emit_plot_data(report, mfs_report, ro_report), cfg.plot_csv)

    if cfg.mode == "strict" and report.errors > 0:
        logger.warning("%d instances could not be scored and were counted as misses",
                       report.errors)
        return EXIT_COVERAGE
    return EXIT_OK


def cmd_disambiguate(args) -> int:
    cfg = _merge_config(args)
    cfg.out_json = None
    cfg.validate()
    if cfg.method in ("mfs", "random"):
        raise ConfigError("disambiguate needs a similarity method"
                          " (cosine-cache, cosine-static, or wmd)")
    overrides = load_descriptor_overrides(cfg.overrides) if cfg.overrides else None
    word = args.word.lower()
    try:
        dataset = load_dataset(cfg.dataset, word_filter=[word], overrides=overrides)
    except DatasetFormatError:
        known = load_dataset(cfg.dataset, overrides=overrides)
        raise ConfigError(
            f"word {args.word!r} has no sense inventory; known words:"
            f" {', '.join(known.word_list())}"
        )
    inventory = dataset.words[word].inventory

    tokens = args.sentence.split()
    if not tokens:
        raise ConfigError("empty sentence")
    if not 0 <= args.index < len(tokens):
        raise ConfigError(
            f"target index {args.index} outside sentence of {len(tokens)} tokens"
        )
    instance = Instance(
        instance_id=args.instance_id,
        target_word=word,
        target_index=args.index,
        tokens=tuple(tokens),
        gold_sense=None,
        split="test",
    )
    cfg.words = [word]
    predictor = _build_predictor(cfg, dataset)
    prediction = predictor.predict(instance, inventory)

    print(f"word: {word}")
    print(f"predicted sense: {prediction.predicted_sense}"
          f" ({inventory.label(prediction.predicted_sense)})")
    print(f"{'sense':>5}  {'label':<24}  {'score':>12}")
    for sid in inventory.sense_ids:
        marker = "*" if sid == prediction.predicted_sense else " "
        print(f"{sid:>5}  {inventory.label(sid):<24}  "
              f"{prediction.per_sense_scores[sid]:>12.6f} {marker}")
    return EXIT_OK


def cmd_cache_info(args) -> int:
    cache = load_cache_dir(args.cache)
    print(f"model: {cache.model or '(unnamed)'}")
    print(f"dimension: {cache.dimension}")
    print(f"layers: {cache.layers}")
    print(f"instance entries: {len(cache.instance_vectors)}")
    print(f"sense entries: {len(cache.sense_vectors)}")
    if not args.dataset:
        return EXIT_OK

    words = [w for w in args.words.split(",") if w] if args.words else None
    dataset = load_dataset(args.dataset, word_filter=words)
    incomplete = False
    print(f"{'word':<12}  {'missing instances':>17}  {'missing senses':>14}")
    for word in dataset.word_list():
        missing_instances, missing_senses = cache.coverage_gaps(dataset, word)
        print(f"{word:<12}  {len(missing_instances):>17}  {len(missing_senses):>14}")
        for iid in missing_instances[:5]:
            print(f"    missing instance: {iid}")
        if len(missing_instances) > 5:
            print(f"    ... and {len(missing_instances) - 5} more")
        for sid in missing_senses:
            print(f"    missing sense: {word}/{sid}")
        incomplete = incomplete or missing_instances or missing_senses
    return EXIT_COVERAGE if incomplete else EXIT_OK


def _add_provider_options(parser):
    parser.add_argument("--dataset", help="dataset root directory")
    parser.add_argument("--method", choices=METHODS, help="disambiguation strategy")
    parser.add_argument("--vectors", help="static word-vector text file")
    parser.add_argument("--cache", help="contextual cache file or directory")
    parser.add_argument("--overrides", help="sense-descriptor override JSON file")
    parser.add_argument("--pooling", choices=("uniform", "softmax"))
    parser.add_argument("--pooling-vector", help="JSON file with the softmax projection")
    parser.add_argument("--gamma", type=float, help="layer-mix scale (default 1.0)")
    parser.add_argument("--layer-weights", help="comma-separated layer weights summing to 1")
    parser.add_argument("--seed", type=int, help="seed for the random baseline")
    parser.add_argument("--mode", choices=("strict", "skip"),
                        help="strict counts unscorable instances as misses (default);"
                             " skip excludes them")
    parser.add_argument("--words", help="comma-separated subset of target words")
    parser.add_argument("--config", help="JSON config file (flags take precedence)")
    parser.add_argument("--jobs", type=int, help="evaluation worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wsdsim",
        description="Unsupervised word sense disambiguation by context-aware similarity",
        epilog=EXIT_CODE_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("evaluate", help="run a strategy over the test split",
                            epilog=EXIT_CODE_HELP,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_provider_options(p_eval)
    p_eval.add_argument("--out-json", help="report JSON path ('-' for stdout, the default)")
    p_eval.add_argument("--out-table", help="plain-text table path ('-' for stdout)")
    p_eval.add_argument("--plot-csv",
                        help="also write per-word CSV with MFS and expected-random baselines")
    p_eval.set_defaults(func=cmd_evaluate)

    p_dis = sub.add_parser("disambiguate", help="disambiguate one sentence")
    _add_provider_options(p_dis)
    p_dis.add_argument("--word", required=True, help="target word")
    p_dis.add_argument("--index", required=True, type=int,
                       help="0-based token position of the target")
    p_dis.add_argument("--sentence", required=True,
                       help="whitespace-tokenized sentence")
    p_dis.add_argument("--instance-id", default="adhoc",
                       help="cache id to look up for cosine-cache (default: adhoc)")
    p_dis.set_defaults(func=cmd_disambiguate)

    p_info = sub.add_parser("cache-info", help="inspect a contextual cache")
    p_info.add_argument("cache", help="cache file or directory")
    p_info.add_argument("--dataset", help="dataset root for coverage checking")
    p_info.add_argument("--words", help="comma-separated subset of words")
    p_info.set_defaults(func=cmd_cache_info)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except (DatasetFormatError, VectorTableError, CacheFormatError) as exc:
        logger.error("%s", exc)
        return EXIT_INPUT
    except CoverageError as exc:
        logger.error("%s", exc)
        return EXIT_COVERAGE
    except SolverError as exc:
        logger.error("%s", exc)
        return EXIT_SOLVER
    except WsdsimError as exc:
        logger.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
