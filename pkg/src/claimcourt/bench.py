"""Benchmark harness: labeled yes/no tasks, metrics, and ablation grids.

Each labeled example becomes one full pipeline case whose claim embeds the
example text; the decision maps back to the task's label vocabulary. A
pipeline failure on one example records an abstention instead of killing
the run, and abstentions count against accuracy by default.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Mapping, Sequence

from claimcourt.decision import Answer
from claimcourt.pipeline import BackendRouter, PipelineConfig, PipelineError, run_case

logger = logging.getLogger(__name__)

DEFAULT_BETAS = (0.05, 0.10, 0.15, 0.20, 0.25)
ABSTAIN = "(abstain)"


class BenchError(ValueError):
    pass


@dataclass(frozen=True)
class TaskSpec:
    """One binary classification task phrased as a claim to adjudicate."""

    name: str
    positive_label: str
    negative_label: str
    claim_template: str  # {text} slot for the example body
    description: str = ""

    @property
    def labels(self) -> tuple[str, str]:
        return (self.positive_label, self.negative_label)

    def claim_for(self, text: str) -> str:
        return self.claim_template.format(text=text.strip())

    def label_for(self, answer: Answer) -> str:
        return self.positive_label if answer is Answer.YES else self.negative_label


TASKS: dict[str, TaskSpec] = {
    "hearsay": TaskSpec(
        name="hearsay",
        positive_label="yes",
        negative_label="no",
        claim_template=(
            'The following excerpt describes an out-of-court statement that is '
            'inadmissible hearsay: "{text}"'
        ),
        description="Does the described statement constitute hearsay?",
    ),
    "learned_hands_courts": TaskSpec(
        name="learned_hands_courts",
        positive_label="yes",
        negative_label="no",
        claim_template=(
            'The following request for legal help concerns courts, lawsuits, '
            'or the judicial process: "{text}"'
        ),
        description="Is the help request about courts and litigation?",
    ),
}


@dataclass(frozen=True)
class LabeledExample:
    example_id: str
    text: str
    label: str


def load_task(path: str | Path, spec: TaskSpec) -> list[LabeledExample]:
    """Read labeled examples from TSV (text<TAB>label) or a JSON list.

    A TSV header row is recognized by a literal 'label' in its last column.
    Any label outside the task vocabulary fails fast, naming the row.
    """
    path = Path(path)
    if not path.exists():
        raise BenchError(f"no such data file: {path}")
    if path.suffix == ".json":
        rows = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(rows, list):
            raise BenchError(f"{path}: expected a JSON list of examples")
        parsed = [
            (i, row.get("id"), str(row.get("text", "")), str(row.get("label", "")))
            for i, row in enumerate(rows, start=1)
        ]
    else:
        parsed = []
        lines = path.read_text(encoding="utf-8").splitlines()
        for i, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            cells = line.split("\t")
            if len(cells) == 2:
                row_id, text, label = None, cells[0], cells[1]
            elif len(cells) == 3:
                row_id, text, label = cells[0], cells[1], cells[2]
            else:
                raise BenchError(
                    f"{path} row {i}: expected 2 or 3 tab-separated columns, got {len(cells)}"
                )
            if i == 1 and label.strip().lower() == "label":
                continue  # header
            parsed.append((i, row_id, text, label))

    examples = []
    for i, row_id, text, label in parsed:
        label = label.strip().lower()
        if label not in spec.labels:
            raise BenchError(
                f"{path} row {i}: unknown label {label!r}, expected one of {list(spec.labels)}"
            )
        if not text.strip():
            raise BenchError(f"{path} row {i}: empty example text")
        examples.append(
            LabeledExample(
                example_id=str(row_id) if row_id else f"ex-{len(examples) + 1:03d}",
                text=text,
                label=label,
            )
        )
    return examples


# ------------------------------------------------------------------ metrics


@dataclass(frozen=True)
class MetricsReport:
    n_examples: int
    n_abstained: int
    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    per_class: Mapping[str, Mapping[str, float]]
    confusion: Mapping[str, Mapping[str, int]]
    label: str = ""
    config: Mapping[str, Any] | None = None

    def to_doc(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "n_examples": self.n_examples,
            "n_abstained": self.n_abstained,
            "accuracy": self.accuracy,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "per_class": {k: dict(v) for k, v in self.per_class.items()},
            "confusion": {k: dict(v) for k, v in self.confusion.items()},
            "config": dict(self.config) if self.config else None,
        }


def _safe_div(numerator: float, denominator: float, fallback: float) -> float:
    return numerator / denominator if denominator > 0 else fallback


def evaluate(
    predictions: Sequence[str | None],
    gold: Sequence[str],
    labels: Sequence[str],
    *,
    zero_division: float = 0.0,
    abstain_wrong: bool = True,
    label: str = "",
    config: Mapping[str, Any] | None = None,
) -> MetricsReport:
    """Accuracy plus macro-averaged precision/recall/F1 over the vocabulary.

    ``None`` predictions are abstentions: wrong by default, or excluded from
    every metric when ``abstain_wrong`` is False. ``zero_division`` is the
    value used for any undefined ratio (a class never predicted, etc.).
    """
    if len(predictions) != len(gold):
        raise BenchError(
            f"predictions ({len(predictions)}) and gold ({len(gold)}) differ in length"
        )
    vocabulary = list(labels)
    for i, value in enumerate(gold):
        if value not in vocabulary:
            raise BenchError(f"gold[{i}] = {value!r} is outside the vocabulary {vocabulary}")
    for i, value in enumerate(predictions):
        if value is not None and value not in vocabulary:
            raise BenchError(
                f"predictions[{i}] = {value!r} is outside the vocabulary {vocabulary}"
            )

    pairs = list(zip(gold, predictions))
    n_abstained = sum(1 for _, p in pairs if p is None)
    if not abstain_wrong:
        pairs = [(g, p) for g, p in pairs if p is not None]

    confusion: dict[str, dict[str, int]] = {
        g: {c: 0 for c in vocabulary + [ABSTAIN]} for g in vocabulary
    }
    for g, p in pairs:
        confusion[g][p if p is not None else ABSTAIN] += 1

    n_scored = len(pairs)
    correct = sum(1 for g, p in pairs if p == g)
    accuracy = _safe_div(correct, n_scored, zero_division)

    per_class: dict[str, dict[str, float]] = {}
    for c in vocabulary:
        tp = sum(1 for g, p in pairs if g == c and p == c)
        fp = sum(1 for g, p in pairs if g != c and p == c)
        fn = sum(1 for g, p in pairs if g == c and p != c)
        precision = _safe_div(tp, tp + fp, zero_division)
        recall = _safe_div(tp, tp + fn, zero_division)
        f1 = _safe_div(2 * precision * recall, precision + recall, zero_division)
        per_class[c] = {
            "precision": precision,
            "recall": recall,
            "f1": f1,
            "support": float(sum(1 for g, _ in pairs if g == c)),
        }

    k = len(vocabulary)
    return MetricsReport(
        n_examples=len(gold),
        n_abstained=n_abstained,
        accuracy=accuracy,
        macro_precision=sum(per_class[c]["precision"] for c in vocabulary) / k,
        macro_recall=sum(per_class[c]["recall"] for c in vocabulary) / k,
        macro_f1=sum(per_class[c]["f1"] for c in vocabulary) / k,
        per_class=per_class,
        confusion=confusion,
        label=label,
        config=config,
    )


# ------------------------------------------------------------------ running


def predict_example(
    example: LabeledExample,
    spec: TaskSpec,
    config: PipelineConfig,
    router: BackendRouter | None = None,
) -> tuple[str | None, dict[str, Any]]:
    """One example through the full pipeline; abstain on hard failure."""
    row: dict[str, Any] = {
        "example_id": example.example_id,
        "gold": example.label,
        "predicted": None,
        "claim_strength": None,
        "escalated": None,
        "error": None,
    }
    claim = spec.claim_for(example.text)
    try:
        record = run_case(
            claim,
            config,
            task_id=f"{spec.name}-{example.example_id}",
            corpus={example.example_id: example.text},
            router=router,
        )
    except PipelineError as exc:
        logger.warning("example %s abstained: %s", example.example_id, exc)
        row["error"] = str(exc)
        return None, row
    predicted = spec.label_for(record.decision.answer)
    row.update(
        predicted=predicted,
        claim_strength=record.strengths.claim_strength(),
        escalated=record.decision.escalated,
    )
    return predicted, row


GridPoint = tuple[str, PipelineConfig]


def cr_uae_grid(base: PipelineConfig) -> list[GridPoint]:
    """All four on/off combinations of clash resolution and escalation."""
    points = []
    for cr in (True, False):
        for uae in (True, False):
            config = replace(
                base,
                clash_resolution_enabled=cr,
                decision=replace(base.decision, uae_enabled=uae),
            )
            points.append((f"cr={'on' if cr else 'off'},uae={'on' if uae else 'off'}", config))
    return points


def beta_grid(
    base: PipelineConfig, betas: Sequence[float] = DEFAULT_BETAS
) -> list[GridPoint]:
    """Sweep the clash adjustment step size."""
    return [
        (
            f"beta={beta:.2f}",
            replace(base, arena=replace(base.arena, adjustment=beta)),
        )
        for beta in betas
    ]


def run_benchmark(
    examples: Sequence[LabeledExample],
    spec: TaskSpec,
    grid: Sequence[GridPoint],
    out_dir: str | Path | None = None,
) -> list[MetricsReport]:
    """Evaluate every grid point, persisting per-example predictions."""
    reports = []
    for label, config in grid:
        router = BackendRouter.from_config(config)
        predictions: list[str | None] = []
        rows: list[dict[str, Any]] = []
        for example in examples:
            predicted, row = predict_example(example, spec, config, router)
            predictions.append(predicted)
            rows.append(row)
        report = evaluate(
            predictions,
            [e.label for e in examples],
            spec.labels,
            label=label,
            config=config.to_doc(),
        )
        reports.append(report)
        if out_dir is not None:
            out = Path(out_dir)
            out.mkdir(parents=True, exist_ok=True)
            safe = label.replace("=", "-").replace(",", "_")
            lines = [json.dumps({"grid_point": label, **row}) for row in rows]
            (out / f"{spec.name}.{safe}.predictions.jsonl").write_text(
                "\n".join(lines) + "\n", encoding="utf-8"
            )
            (out / f"{spec.name}.{safe}.metrics.json").write_text(
                json.dumps(report.to_doc(), indent=2) + "\n", encoding="utf-8"
            )
    return reports
