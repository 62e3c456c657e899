from dataclasses import dataclass
from typing import Any, Dict, Iterable, Sequence, Tuple

import numpy as np

from chaos_watermark.nn.metrics import confusion_counts
from chaos_watermark.utils.exports import Exporter

from . import constants


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """Row = true label, column = predicted label"""

    counts: np.ndarray

    @property
    def class_count(self) -> int:
        return int(self.counts.shape[0])

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def correct(self) -> int:
        return int(np.trace(self.counts))

    @property
    def errors(self) -> int:
        return self.total - self.correct

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0

    def label_names(self) -> Tuple[str, ...]:
        return tuple(
            constants.SOURCE_NAMES.get(i, str(i)) for i in range(self.class_count)
        )


def confusion(
    true_labels: Sequence[int], predicted_labels: Sequence[int], class_count: int
) -> ConfusionMatrix:
    return ConfusionMatrix(
        counts=confusion_counts(true_labels, predicted_labels, class_count)
    )


def format_confusion(matrix: ConfusionMatrix) -> str:
    names = matrix.label_names()
    width = max(len(name) for name in names + ("true/pred",)) + 1
    lines = [
        f"Accuracy: {matrix.accuracy:.4f} "
        f"({matrix.errors} errors in {matrix.total} samples)",
        "true/pred".ljust(width) + "".join(name.rjust(width) for name in names),
    ]
    for name, row in zip(names, matrix.counts):
        lines.append(
            name.ljust(width) + "".join(str(int(v)).rjust(width) for v in row)
        )
    return "\n".join(lines) + "\n"


class ConfusionExporter(Exporter):
    def __init__(self, matrix: ConfusionMatrix):
        self.matrix = matrix
        self.fields = ["true"] + list(matrix.label_names())

    def get_rows(self) -> Iterable[Dict[str, Any]]:
        names = self.matrix.label_names()
        for name, row in zip(names, self.matrix.counts):
            yield {"true": name, **{n: int(v) for n, v in zip(names, row)}}
