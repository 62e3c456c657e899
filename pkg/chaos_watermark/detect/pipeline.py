import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from chaos_watermark.nn.network import DenseNet
from chaos_watermark.nn.training import TrainConfig

from . import constants
from .confusion import ConfusionMatrix, confusion
from .features import ActivationFeatureSet, collect_features, combine, split_features
from .logreg import LogRegModel, classify, train_logreg

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DetectionResult:
    model: LogRegModel
    features: ActivationFeatureSet
    train_set: ActivationFeatureSet
    test_set: ActivationFeatureSet
    predictions: np.ndarray
    probabilities: np.ndarray
    matrix: ConfusionMatrix

    @property
    def accuracy(self) -> float:
        return self.matrix.accuracy


def run_detection(
    nets: Sequence[DenseNet],
    inputs: np.ndarray,
    layer: str,
    threshold: float = constants.DEFAULT_THRESHOLD,
    config: Optional[TrainConfig] = None,
    l2: float = constants.DEFAULT_L2,
) -> DetectionResult:
    """
    Labels the activations of each network by its position in `nets`, trains
    the detector on the leading half of every model's retained samples and
    scores it on the rest.
    """
    sets = [
        collect_features(net, inputs, layer, threshold=threshold, label=label)
        for label, net in enumerate(nets)
    ]
    features = combine(sets)
    train_set, test_set = split_features(features)

    model = train_logreg(train_set, config, l2=l2)
    predictions, probabilities = classify(model, test_set.features)
    matrix = confusion(test_set.labels, predictions, len(nets))
    logger.info(
        "Detector accuracy %.4f with %d errors in %d held-out samples",
        matrix.accuracy,
        matrix.errors,
        matrix.total,
    )
    return DetectionResult(
        model=model,
        features=features,
        train_set=train_set,
        test_set=test_set,
        predictions=predictions,
        probabilities=probabilities,
        matrix=matrix,
    )
