import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from chaos_watermark.nn.exceptions import DimensionMismatchError, TrainingError
from chaos_watermark.nn.network import log_softmax, softmax
from chaos_watermark.nn.optimizers import optimizer_registry
from chaos_watermark.nn.training import TrainConfig

from . import constants
from .exceptions import SingleClassError
from .features import ActivationFeatureSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LogRegModel:
    """
    Multinomial logistic regression over whitened features. Class scores are
    `((x - mean) @ whitening) @ weights.T + bias`.
    """

    weights: np.ndarray
    bias: np.ndarray
    mean: np.ndarray
    whitening: np.ndarray
    losses: Tuple[float, ...] = ()

    @property
    def class_count(self) -> int:
        return int(self.weights.shape[0])

    @property
    def feature_count(self) -> int:
        return int(self.mean.shape[0])

    def transform(self, features: np.ndarray) -> np.ndarray:
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 2 or features.shape[1] != self.feature_count:
            raise DimensionMismatchError(
                f"Expected rows of {self.feature_count} features, "
                f"got {features.shape}"
            )
        return (features - self.mean) @ self.whitening

    def scores(self, features: np.ndarray) -> np.ndarray:
        return self.transform(features) @ self.weights.T + self.bias


def fit_whitening(features: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Mean and symmetric whitening matrix of the rows. Eigenvalues are floored
    at WHITENING_FLOOR times the largest one; constant data gets the identity.
    """
    mean = features.mean(axis=0)
    centred = features - mean
    covariance = centred.T @ centred / len(features)
    eigenvalues, eigenvectors = np.linalg.eigh(covariance)

    largest = eigenvalues.max(initial=0.0)
    if largest <= 0:
        return mean, np.eye(features.shape[1])

    floored = np.maximum(eigenvalues, constants.WHITENING_FLOOR * largest)
    whitening = (eigenvectors / np.sqrt(floored)) @ eigenvectors.T
    return mean, whitening


def logreg_loss_and_gradients(
    weights: np.ndarray,
    bias: np.ndarray,
    inputs: np.ndarray,
    labels: np.ndarray,
    l2: float = constants.DEFAULT_L2,
) -> Tuple[float, List[np.ndarray]]:
    """
    Mean cross-entropy of softmax(inputs @ weights.T + bias) against one-hot
    labels plus l2 / 2 times the squared weight norm.
    """
    logits = inputs @ weights.T + bias
    count = len(inputs)
    loss = -float(np.sum(labels * log_softmax(logits))) / count
    loss += 0.5 * l2 * float(np.sum(weights**2))

    delta = (softmax(logits) - labels) / count
    return loss, [delta.T @ inputs + l2 * weights, delta.sum(axis=0)]


def train_logreg(
    features: ActivationFeatureSet,
    config: Optional[TrainConfig] = None,
    l2: float = constants.DEFAULT_L2,
) -> LogRegModel:
    """
    Fits the whitening on the training rows, then minimises the regularised
    cross-entropy with the configured optimizer. Weights start at zero and
    batches follow `config.seed`, so training is deterministic.
    """
    config = config or TrainConfig(
        learning_rate=constants.DEFAULT_LEARNING_RATE,
        epochs=constants.DEFAULT_EPOCHS,
        batch_size=constants.DEFAULT_BATCH_SIZE,
    )
    config.full_clean()
    if len(features.classes) < 2:
        raise SingleClassError(
            f"Need at least two sources, got labels {list(features.classes)}"
        )

    class_count = int(features.labels.max()) + 1
    mean, whitening = fit_whitening(features.features)
    inputs = (features.features - mean) @ whitening
    labels = np.eye(class_count)[features.labels]

    weights = np.zeros((class_count, inputs.shape[1]))
    bias = np.zeros(class_count)
    params = [weights, bias]
    optimizer = optimizer_registry.create(config)
    rng = np.random.default_rng(config.seed)

    losses = []
    for epoch in range(config.epochs):
        order = rng.permutation(len(inputs))
        total = 0.0
        for start in range(0, len(inputs), config.batch_size):
            batch = order[start : start + config.batch_size]
            loss, grads = logreg_loss_and_gradients(
                weights, bias, inputs[batch], labels[batch], l2=l2
            )
            if not math.isfinite(loss):
                raise TrainingError(f"Detector loss diverged in epoch {epoch + 1}")
            optimizer.step(params, grads)
            total += loss * len(batch)
        losses.append(total / len(inputs))

    logger.info(
        "Trained detector on %d rows of %d features, final loss %.6g",
        len(inputs),
        inputs.shape[1],
        losses[-1],
    )
    return LogRegModel(
        weights=weights,
        bias=bias,
        mean=mean,
        whitening=whitening,
        losses=tuple(losses),
    )


def classify(
    model: LogRegModel, features: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Predicted labels, ties going to the lowest index, and probabilities"""
    probabilities = softmax(model.scores(features))
    return np.argmax(probabilities, axis=1), probabilities
