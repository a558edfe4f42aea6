"""Accuracy scoring against gold labels, report tables, and plot data.

A hit is an exact match between predicted and gold sense on the test
split.  In strict mode (the default) an instance whose prediction fails
is still counted, as a miss; in skip mode it is excluded and reported as
a coverage gap.  Accuracies are reported to two decimals; internal
arithmetic keeps full precision.
"""

import concurrent.futures
import json
import logging
import multiprocessing
from dataclasses import dataclass, field

from .dataset import Dataset, dataset_fingerprint
from .engine import expected_random_accuracy
from .errors import ConfigError, WsdsimError

logger = logging.getLogger(__name__)


@dataclass
class WordResult:
    """Hit counts for one word.  ``hits`` is fractional only for the
    closed-form random baseline (expected hits)."""

    instances: int
    hits: float
    errors: int = 0
    skips: int = 0

    @property
    def accuracy(self) -> float:
        """Accuracy in percent, full precision."""
        if self.instances == 0:
            return 0.0
        return 100.0 * self.hits / self.instances


@dataclass
class EvaluationReport:
    strategy: str
    dataset_fingerprint: str
    per_word: dict[str, WordResult] = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    @property
    def global_result(self) -> WordResult:
        # Derived from the rows, so conservation holds by construction.
        return WordResult(
            instances=sum(r.instances for r in self.per_word.values()),
            hits=sum(r.hits for r in self.per_word.values()),
            errors=sum(r.errors for r in self.per_word.values()),
            skips=sum(r.skips for r in self.per_word.values()),
        )

    @property
    def errors(self) -> int:
        return self.global_result.errors

    @property
    def skips(self) -> int:
        return self.global_result.skips


def _evaluate_word(data, predictor, split: str, mode: str) -> WordResult:
    result = WordResult(instances=0, hits=0)
    for instance in data.split(split):
        try:
            prediction = predictor.predict(instance, data.inventory)
        except WsdsimError as exc:
            if mode == "strict":
                result.instances += 1
                result.errors += 1
            else:
                result.skips += 1
            logger.warning("prediction failed (%s mode): %s", mode, exc)
            continue
        result.instances += 1
        if prediction.predicted_sense == instance.gold_sense:
            result.hits += 1
    return result


_worker_state: dict = {}


def _init_worker(dataset, predictor, split, mode):
    _worker_state.update(dataset=dataset, predictor=predictor, split=split, mode=mode)


def _eval_word_task(word: str):
    s = _worker_state
    return word, _evaluate_word(s["dataset"].words[word], s["predictor"], s["split"], s["mode"])


def evaluate(
    dataset: Dataset,
    predictor,
    split: str = "test",
    mode: str = "strict",
    words=None,
    jobs: int = 1,
) -> EvaluationReport:
    """Run a predictor over a split and aggregate per-word and global hits."""
    if mode not in ("strict", "skip"):
        raise ConfigError(f"unknown evaluation mode {mode!r}")
    selected = sorted(words) if words is not None else dataset.word_list()
    for word in selected:
        if word not in dataset.words:
            raise ConfigError(f"word {word!r} not present in the dataset")

    per_word: dict[str, WordResult] = {}
    if jobs > 1 and len(selected) > 1:
        ctx = multiprocessing.get_context("fork")
        with concurrent.futures.ProcessPoolExecutor(
            max_workers=min(jobs, len(selected)),
            mp_context=ctx,
            initializer=_init_worker,
            initargs=(dataset, predictor, split, mode),
        ) as pool:
            for word, result in pool.map(_eval_word_task, selected):
                per_word[word] = result
    else:
        for word in selected:
            per_word[word] = _evaluate_word(dataset.words[word], predictor, split, mode)
    per_word = {word: per_word[word] for word in selected}

    return EvaluationReport(
        strategy=getattr(predictor, "name", predictor.__class__.__name__),
        dataset_fingerprint=dataset_fingerprint(dataset),
        per_word=per_word,
        config=dict(getattr(predictor, "config", {})),
    )


def expected_random_report(dataset: Dataset, words=None, split: str = "test") -> EvaluationReport:
    """Closed-form random baseline: expected hits n_w/k_w per word."""
    selected = sorted(words) if words is not None else dataset.word_list()
    per_word = {}
    for word in selected:
        data = dataset.words[word]
        n = len(data.split(split))
        per_word[word] = WordResult(instances=n, hits=n / len(data.inventory))
    report = EvaluationReport(
        strategy="ro-expected",
        dataset_fingerprint=dataset_fingerprint(dataset),
        per_word=per_word,
    )
    # Self-check against the closed form computed independently.
    assert abs(report.global_result.accuracy / 100.0
               - expected_random_accuracy(dataset, words=selected, split=split)) < 1e-12
    return report


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _row_json(result: WordResult) -> dict:
    hits = result.hits
    if isinstance(hits, float) and hits.is_integer():
        hits = int(hits)
    row = {
        "instances": result.instances,
        "hits": hits,
        "accuracy": round(result.accuracy, 2),
    }
    if result.errors:
        row["errors"] = result.errors
    if result.skips:
        row["skips"] = result.skips
    return row


def report_to_json(report: EvaluationReport) -> str:
    payload = {
        "strategy": report.strategy,
        "dataset_fingerprint": report.dataset_fingerprint,
        "per_word": {w: _row_json(r) for w, r in sorted(report.per_word.items())},
        "global": _row_json(report.global_result),
        "errors": report.errors,
        "skips": report.skips,
        "config": report.config,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> EvaluationReport:
    payload = json.loads(text)
    per_word = {}
    for word, row in payload["per_word"].items():
        result = WordResult(
            instances=int(row["instances"]),
            hits=row["hits"],
            errors=int(row.get("errors", 0)),
            skips=int(row.get("skips", 0)),
        )
        if abs(result.accuracy - float(row["accuracy"])) > 0.005:
            raise ConfigError(
                f"report row for {word!r} is inconsistent: accuracy {row['accuracy']}"
                f" vs recomputed {result.accuracy:.4f}"
            )
        per_word[word] = result
    report = EvaluationReport(
        strategy=payload["strategy"],
        dataset_fingerprint=payload["dataset_fingerprint"],
        per_word=per_word,
        config=payload.get("config", {}),
    )
    recomputed = _row_json(report.global_result)
    stated = dict(payload["global"])
    if {k: stated.get(k) for k in recomputed} != recomputed:
        raise ConfigError("report global row does not match the sum of per-word rows")
    return report


def render_report_table(report: EvaluationReport) -> str:
    """Aligned plain-text table, one row per word plus a global row."""
    width = max([len("GLOBAL")] + [len(w) for w in report.per_word])
    lines = [
        f"strategy: {report.strategy}    dataset: {report.dataset_fingerprint}",
        f"{'word':<{width}}  {'instances':>9}  {'hits':>8}  {'accuracy':>8}",
    ]
    rows = list(sorted(report.per_word.items())) + [("GLOBAL", report.global_result)]
    for word, r in rows:
        hits = int(r.hits) if isinstance(r.hits, float) and r.hits.is_integer() else r.hits
        lines.append(
            f"{word:<{width}}  {r.instances:>9}  {hits:>8}  {r.accuracy:>8.2f}"
        )
    if report.errors or report.skips:
        lines.append(f"errors: {report.errors}  skips: {report.skips}")
    return "\n".join(lines) + "\n"


def compare_reports(reports: list[EvaluationReport]) -> list[tuple[str, float, float]]:
    """(strategy, hits, accuracy) rows sorted by accuracy descending.

    Equal accuracies fall back to strategy-name order so the table is
    stable across runs.
    """
    if not reports:
        raise ConfigError("nothing to compare")
    fingerprints = {r.dataset_fingerprint for r in reports}
    if len(fingerprints) > 1:
        raise ConfigError(f"mismatched dataset fingerprints: {sorted(fingerprints)}")
    rows = []
    for r in reports:
        g = r.global_result
        hits = int(g.hits) if isinstance(g.hits, float) and g.hits.is_integer() else g.hits
        rows.append((r.strategy, hits, round(g.accuracy, 2)))
    rows.sort(key=lambda row: (-row[2], row[0]))
    return rows


def render_comparison(rows) -> str:
    width = max(len("Strategy"), max(len(r[0]) for r in rows))
    lines = [f"{'Strategy':<{width}}  {'Hits':>8}  {'Accuracy':>8}"]
    for strategy, hits, accuracy in rows:
        lines.append(f"{strategy:<{width}}  {hits:>8}  {accuracy:>7.2f}%")
    return "\n".join(lines) + "\n"


def _fmt_plot(value: float) -> str:
    text = f"{round(value, 2):.2f}".rstrip("0").rstrip(".")
    return text if text else "0"


def emit_plot_data(
    report: EvaluationReport,
    mfs_report: EvaluationReport,
    ro_report: EvaluationReport,
) -> str:
    """Per-word CSV with the three data series of the benchmark figures."""
    for other in (mfs_report, ro_report):
        if other.dataset_fingerprint != report.dataset_fingerprint:
            raise ConfigError("mismatched dataset fingerprints between report and baseline")
    lines = ["word,method_accuracy,mfs_accuracy,ro_accuracy"]
    for word in sorted(report.per_word):
        try:
            mfs_row = mfs_report.per_word[word]
            ro_row = ro_report.per_word[word]
        except KeyError:
            raise ConfigError(f"baseline report is missing word {word!r}")
        lines.append(
            f"{word},{_fmt_plot(report.per_word[word].accuracy)},"
            f"{_fmt_plot(mfs_row.accuracy)},{_fmt_plot(ro_row.accuracy)}"
        )
    return "\n".join(lines) + "\n"
