import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Sequence, Tuple

from django.core.exceptions import ValidationError

import numpy as np

from chaos_watermark.nn.network import DenseNet, layer_activations, predict
from chaos_watermark.utils.exports import Exporter

from . import constants
from .exceptions import NoSamplesRetainedError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ActivationFeatureSet:
    """
    Flattened layer activations labelled by the model they came from. Only
    samples the model itself predicted with confidence >= threshold are kept.
    """

    features: np.ndarray
    labels: np.ndarray
    threshold: float
    kept: Dict[int, int] = field(default_factory=dict)
    discarded: Dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def classes(self) -> Tuple[int, ...]:
        return tuple(int(label) for label in np.unique(self.labels))


def validate_threshold(threshold: float) -> None:
    if not 0.0 < threshold < 1.0:
        raise ValidationError(
            f"The confidence threshold must lie in (0, 1), got {threshold!r}",
            code="threshold",
        )


def collect_features(
    net: DenseNet,
    inputs: np.ndarray,
    layer: str,
    threshold: float = constants.DEFAULT_THRESHOLD,
    label: int = constants.SOURCES.original,
) -> ActivationFeatureSet:
    validate_threshold(threshold)

    confidence = predict(net, inputs).max(axis=1)
    retained = confidence >= threshold
    kept = int(retained.sum())
    if not kept:
        raise NoSamplesRetainedError(
            f"No sample reached confidence {threshold} for model {label} "
            f"(best was {confidence.max():.4f})",
            label=label,
        )

    rows = layer_activations(net, np.asarray(inputs)[retained], layer)
    logger.info(
        "Model %d: kept %d of %d samples at confidence %s",
        label,
        kept,
        len(retained),
        threshold,
    )
    return ActivationFeatureSet(
        features=rows.reshape(kept, -1),
        labels=np.full(kept, label, dtype=np.int64),
        threshold=threshold,
        kept={label: kept},
        discarded={label: len(retained) - kept},
    )


def combine(
    sets: Sequence[ActivationFeatureSet], balance: bool = True
) -> ActivationFeatureSet:
    """
    Stacks the per-model sets. With `balance` every model is truncated to the
    smallest kept count.
    """
    if not sets:
        raise ValidationError("Nothing to combine", code="empty")
    if len({s.threshold for s in sets}) != 1:
        raise ValidationError(
            "Feature sets were filtered at different thresholds", code="threshold"
        )

    count = min(len(s) for s in sets) if balance else None
    if balance and any(len(s) != count for s in sets):
        logger.warning(
            "Truncating %s samples per model to %d",
            [len(s) for s in sets],
            count,
        )

    kept: Dict[int, int] = {}
    discarded: Dict[int, int] = {}
    for s in sets:
        kept.update(s.kept)
        discarded.update(s.discarded)

    return ActivationFeatureSet(
        features=np.concatenate([s.features[:count] for s in sets]),
        labels=np.concatenate([s.labels[:count] for s in sets]),
        threshold=sets[0].threshold,
        kept=kept,
        discarded=discarded,
    )


def split_features(
    features: ActivationFeatureSet, fraction: float = constants.TRAIN_FRACTION
) -> Tuple[ActivationFeatureSet, ActivationFeatureSet]:
    """
    Splits every label's rows in order: the leading `fraction` trains, the
    rest is held out.
    """
    if not 0.0 < fraction < 1.0:
        raise ValidationError("The split fraction must lie in (0, 1)", code="fraction")

    train_rows = []
    test_rows = []
    for label in features.classes:
        rows = np.flatnonzero(features.labels == label)
        cut = int(len(rows) * fraction)
        train_rows.append(rows[:cut])
        test_rows.append(rows[cut:])

    def take(indices: np.ndarray) -> ActivationFeatureSet:
        return ActivationFeatureSet(
            features=features.features[indices],
            labels=features.labels[indices],
            threshold=features.threshold,
            kept=features.kept,
            discarded=features.discarded,
        )

    return take(np.concatenate(train_rows)), take(np.concatenate(test_rows))


class RetentionExporter(Exporter):
    """Kept and discarded sample counts per source model, with the rows used"""

    fields = ["model", "kept", "discarded", "used"]

    def __init__(self, features: ActivationFeatureSet):
        self.features = features

    def get_rows(self) -> Iterable[Dict[str, Any]]:
        used = np.bincount(self.features.labels, minlength=len(self.features.kept))
        for label in sorted(self.features.kept):
            yield {
                "model": constants.SOURCE_NAMES.get(label, str(label)),
                "kept": self.features.kept[label],
                "discarded": self.features.discarded.get(label, 0),
                "used": int(used[label]),
            }
