from dataclasses import dataclass
from typing import Any, Dict, Iterable, Sequence, Tuple

import numpy as np

from chaos_watermark.utils.exports import Exporter

from .datasets import Dataset
from .exceptions import DatasetError
from .network import DenseNet, predict


def confusion_counts(
    true_labels: Sequence[int], predicted_labels: Sequence[int], class_count: int
) -> np.ndarray:
    """counts[i, j] is the number of samples of class i predicted as j"""
    true = np.asarray(true_labels, dtype=np.int64)
    predicted = np.asarray(predicted_labels, dtype=np.int64)
    if true.shape != predicted.shape or true.ndim != 1:
        raise DatasetError(f"{true.size} true labels but {predicted.size} predictions")
    for labels in (true, predicted):
        if labels.size and (labels.min() < 0 or labels.max() >= class_count):
            raise DatasetError(f"Labels must lie in [0, {class_count})")

    flat = np.bincount(true * class_count + predicted, minlength=class_count**2)
    return flat.reshape(class_count, class_count)


def _ratio(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    result = np.zeros(numerator.shape, dtype=np.float64)
    np.divide(numerator, denominator, out=result, where=denominator > 0)
    return result


@dataclass(frozen=True, eq=False)
class ClassMetrics:
    """
    Per-class precision, recall and F1 with accuracy and the macro and
    support-weighted averages. A ratio with a zero denominator scores 0
    and sets `zero_division` for its class.
    """

    accuracy: float
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    support: np.ndarray
    true_positives: np.ndarray
    false_positives: np.ndarray
    false_negatives: np.ndarray
    true_negatives: np.ndarray
    zero_division: np.ndarray

    @classmethod
    def from_confusion(cls, counts: np.ndarray) -> "ClassMetrics":
        total = int(counts.sum())
        if total == 0:
            raise DatasetError("Cannot compute metrics without samples")

        tp = np.diag(counts).astype(np.int64)
        fp = counts.sum(axis=0) - tp
        fn = counts.sum(axis=1) - tp
        tn = total - tp - fp - fn

        precision = _ratio(tp, tp + fp)
        recall = _ratio(tp, tp + fn)
        f1 = _ratio(2 * precision * recall, precision + recall)
        undefined = ((tp + fp) == 0) | ((tp + fn) == 0) | (precision + recall == 0)
        return cls(
            accuracy=float(tp.sum()) / total,
            precision=precision,
            recall=recall,
            f1=f1,
            support=tp + fn,
            true_positives=tp,
            false_positives=fp,
            false_negatives=fn,
            true_negatives=tn,
            zero_division=undefined,
        )

    @property
    def class_count(self) -> int:
        return len(self.precision)

    @property
    def zero_support(self) -> np.ndarray:
        return self.support == 0

    def _weighted(self, values: np.ndarray) -> float:
        return float(np.sum(values * self.support) / np.sum(self.support))

    @property
    def macro_precision(self) -> float:
        return float(np.mean(self.precision))

    @property
    def macro_recall(self) -> float:
        return float(np.mean(self.recall))

    @property
    def macro_f1(self) -> float:
        return float(np.mean(self.f1))

    @property
    def weighted_precision(self) -> float:
        return self._weighted(self.precision)

    @property
    def weighted_recall(self) -> float:
        return self._weighted(self.recall)

    @property
    def weighted_f1(self) -> float:
        return self._weighted(self.f1)


def compute_metrics(
    true_labels: Sequence[int], predicted_labels: Sequence[int], class_count: int
) -> ClassMetrics:
    return ClassMetrics.from_confusion(
        confusion_counts(true_labels, predicted_labels, class_count)
    )


def evaluate(net: DenseNet, data: Dataset) -> ClassMetrics:
    if len(data) == 0:
        raise DatasetError("Cannot evaluate on an empty dataset")
    predictions = np.argmax(predict(net, data.features), axis=1)
    return compute_metrics(data.targets, predictions, data.class_count)


def format_metrics(metrics: ClassMetrics) -> str:
    lines = [
        f"Accuracy: {metrics.accuracy:.4f}",
        f"{'class':>12} {'precision':>9} {'recall':>9} {'f1':>9} {'support':>8}",
    ]
    for i in range(metrics.class_count):
        flag = " *" if metrics.zero_division[i] else ""
        lines.append(
            f"{i:>12} {metrics.precision[i]:>9.4f} {metrics.recall[i]:>9.4f} "
            f"{metrics.f1[i]:>9.4f} {metrics.support[i]:>8}{flag}"
        )
    total = int(metrics.support.sum())
    lines.append(
        f"{'macro avg':>12} {metrics.macro_precision:>9.4f} "
        f"{metrics.macro_recall:>9.4f} {metrics.macro_f1:>9.4f} {total:>8}"
    )
    lines.append(
        f"{'weighted avg':>12} {metrics.weighted_precision:>9.4f} "
        f"{metrics.weighted_recall:>9.4f} {metrics.weighted_f1:>9.4f} {total:>8}"
    )
    if metrics.zero_division.any():
        lines.append("* zero denominator, scored 0")
    return "\n".join(lines) + "\n"


class MetricsExporter(Exporter):
    fields = ["class", "precision", "recall", "f1", "support", "zero_division"]

    def __init__(self, metrics: ClassMetrics):
        self.metrics = metrics

    def get_rows(self) -> Iterable[Dict[str, Any]]:
        metrics = self.metrics
        for i in range(metrics.class_count):
            yield {
                "class": i,
                "precision": repr(float(metrics.precision[i])),
                "recall": repr(float(metrics.recall[i])),
                "f1": repr(float(metrics.f1[i])),
                "support": int(metrics.support[i]),
                "zero_division": int(metrics.zero_division[i]),
            }
        total = int(metrics.support.sum())
        yield {
            "class": "macro",
            "precision": repr(metrics.macro_precision),
            "recall": repr(metrics.macro_recall),
            "f1": repr(metrics.macro_f1),
            "support": total,
            "zero_division": None,
        }
        yield {
            "class": "weighted",
            "precision": repr(metrics.weighted_precision),
            "recall": repr(metrics.weighted_recall),
            "f1": repr(metrics.weighted_f1),
            "support": total,
            "zero_division": None,
        }
        yield {
            "class": "accuracy",
            "precision": None,
            "recall": None,
            "f1": repr(metrics.accuracy),
            "support": total,
            "zero_division": None,
        }


class StageAccuracyExporter(Exporter):
    """One row per named evaluation, e.g. before and after an attack"""

    fields = ["stage", "accuracy", "macro_f1", "support"]

    def __init__(self, stages: Sequence[Tuple[str, ClassMetrics]]):
        self.stages = stages

    def get_rows(self) -> Iterable[Dict[str, Any]]:
        for name, metrics in self.stages:
            yield {
                "stage": name,
                "accuracy": repr(metrics.accuracy),
                "macro_f1": repr(metrics.macro_f1),
                "support": int(metrics.support.sum()),
            }
