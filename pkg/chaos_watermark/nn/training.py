import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import List

from django.core.exceptions import ValidationError

import numpy as np

from . import constants
from .datasets import Dataset
from .exceptions import DimensionMismatchError, TrainingError
from .network import DenseNet, loss_and_gradients
from .optimizers import optimizer_registry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainConfig:
    optimizer: str = constants.DEFAULT_OPTIMIZER
    learning_rate: float = constants.DEFAULT_LEARNING_RATE
    momentum: float = constants.DEFAULT_MOMENTUM
    beta1: float = constants.DEFAULT_BETA1
    beta2: float = constants.DEFAULT_BETA2
    eps: float = constants.DEFAULT_EPS
    batch_size: int = constants.DEFAULT_BATCH_SIZE
    epochs: int = constants.DEFAULT_EPOCHS
    seed: int = 0
    l2: float = 0.0

    def full_clean(self, allow_zero_learning_rate: bool = False) -> None:
        errors = []
        try:
            optimizer_registry.get(self.optimizer)
        except ValidationError as e:
            errors.append(e)

        if not math.isfinite(self.learning_rate) or self.learning_rate < 0 or (
            self.learning_rate == 0 and not allow_zero_learning_rate
        ):
            errors.append(
                ValidationError(
                    "The learning rate must be positive", code="learning_rate"
                )
            )
        if not 0.0 <= self.momentum < 1.0:
            errors.append(
                ValidationError("Momentum must lie in [0, 1)", code="momentum")
            )
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            errors.append(
                ValidationError("Adam betas must lie in [0, 1)", code="betas")
            )
        if not self.eps > 0:
            errors.append(ValidationError("eps must be positive", code="eps"))
        if self.batch_size < 1:
            errors.append(
                ValidationError("The batch size must be at least 1", code="batch_size")
            )
        if self.epochs < 1:
            errors.append(
                ValidationError("Training needs at least one epoch", code="epochs")
            )
        if not self.l2 >= 0:
            errors.append(
                ValidationError("The L2 factor cannot be negative", code="l2")
            )

        if errors:
            raise ValidationError(errors)


@dataclass
class TrainingResult:
    net: DenseNet
    losses: List[float] = field(default_factory=list)


def train(
    net: DenseNet,
    data: Dataset,
    config: TrainConfig,
    allow_zero_learning_rate: bool = False,
) -> TrainingResult:
    """
    Mini-batch training on the softmax cross-entropy. The input network is
    left untouched; the result holds the trained copy and the mean loss of
    every epoch.

    Batches are drawn from a fresh permutation each epoch, seeded by
    `config.seed`, so a run is reproducible from its inputs.
    """
    config.full_clean(allow_zero_learning_rate=allow_zero_learning_rate)
    if len(data) == 0:
        raise TrainingError("Cannot train on an empty dataset")
    if data.feature_count != net.input_dim or data.class_count != net.output_dim:
        raise DimensionMismatchError(
            f"Network {net.sizes} cannot take {data.feature_count} features "
            f"in {data.class_count} classes"
        )

    net = net.copy()
    params = net.parameters()
    optimizer = optimizer_registry.create(config)
    rng = np.random.default_rng(config.seed)

    losses = []
    for epoch in range(config.epochs):
        order = rng.permutation(len(data))
        total = 0.0
        for start in range(0, len(data), config.batch_size):
            batch = order[start : start + config.batch_size]
            loss, grads = loss_and_gradients(
                net, data.features[batch], data.labels[batch], l2=config.l2
            )
            if not math.isfinite(loss):
                raise TrainingError(f"Loss diverged in epoch {epoch + 1}")
            optimizer.step(params, grads)
            total += loss * len(batch)

        losses.append(total / len(data))
        logger.debug("Epoch %d: loss %.6g", epoch + 1, losses[-1])

    logger.info(
        "Trained %s with %s for %d epochs, final loss %.6g",
        "x".join(str(size) for size in net.sizes),
        config.optimizer,
        config.epochs,
        losses[-1],
    )
    return TrainingResult(net=net, losses=losses)


def fine_tune_config(base: TrainConfig, **overrides: object) -> TrainConfig:
    """The base configuration at a tenth of its learning rate"""
    config = dataclasses.replace(
        base, learning_rate=base.learning_rate / constants.FINE_TUNE_FACTOR
    )
    return dataclasses.replace(config, **overrides)  # type: ignore


def fine_tune(
    net: DenseNet,
    data: Dataset,
    base: TrainConfig,
    allow_zero_learning_rate: bool = False,
    **overrides: object,
) -> DenseNet:
    config = fine_tune_config(base, **overrides)
    return train(
        net, data, config, allow_zero_learning_rate=allow_zero_learning_rate
    ).net
