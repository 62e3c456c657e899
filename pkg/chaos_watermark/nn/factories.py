from typing import Any, Sequence

import factory

from .datasets import Dataset, make_blobs
from .network import DenseNet
from .training import TrainConfig


class DenseNetFactory(factory.Factory):
    class Meta:
        model = DenseNet

    sizes = (4, 8, 3)
    seed = factory.Sequence(lambda n: n)

    @classmethod
    def _create(
        cls, model_class: Any, sizes: Sequence[int], seed: int, **kwargs: Any
    ) -> DenseNet:
        return model_class.build(sizes, seed=seed)

    _build = _create


class DatasetFactory(factory.Factory):
    """Well separated Gaussian blobs"""

    class Meta:
        model = Dataset

    samples = 240
    features = 4
    classes = 3
    spread = 0.05
    seed = factory.Sequence(lambda n: n)

    @classmethod
    def _create(cls, model_class: Any, **kwargs: Any) -> Dataset:
        return make_blobs(**kwargs)

    _build = _create


class TrainConfigFactory(factory.Factory):
    class Meta:
        model = TrainConfig

    learning_rate = 0.01
    batch_size = 16
    epochs = 30
    seed = factory.Sequence(lambda n: n)
