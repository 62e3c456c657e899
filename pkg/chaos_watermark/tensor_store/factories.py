from datetime import timezone
from typing import Any, Sequence, Tuple

import factory
import numpy as np
from factory.random import randgen

from chaos_watermark.chaos.factories import ChaoticParamsFactory

from .manifest import WatermarkManifest
from .weights import ModelWeights, WeightTensor


def random_values(shape: Sequence[int], dtype: Any = np.float64) -> np.ndarray:
    rng = np.random.default_rng(randgen.getrandbits(32))
    return rng.normal(0.0, 0.1, size=tuple(shape)).astype(dtype)


class WeightTensorFactory(factory.Factory):
    class Meta:
        model = WeightTensor

    class Params:
        shape = (4, 3)
        dtype = np.float64

    name = factory.Sequence(lambda n: f"dense_{n}/kernel")
    values = factory.LazyAttribute(lambda o: random_values(o.shape, o.dtype))


class ModelWeightsFactory(factory.Factory):
    """Kernel and bias pairs for a small dense network"""

    class Meta:
        model = ModelWeights

    class Params:
        sizes = (4, 8, 3)
        dtype = np.float64

    @factory.lazy_attribute
    def tensors(self) -> Tuple[WeightTensor, ...]:
        tensors = []
        for i, (fan_in, fan_out) in enumerate(zip(self.sizes, self.sizes[1:])):
            tensors.append(
                WeightTensor(
                    name=f"dense_{i}/kernel",
                    values=random_values((fan_in, fan_out), self.dtype),
                )
            )
            tensors.append(
                WeightTensor(
                    name=f"dense_{i}/bias",
                    values=random_values((fan_out,), self.dtype),
                )
            )
        return tuple(tensors)


class WatermarkManifestFactory(factory.Factory):
    class Meta:
        model = WatermarkManifest

    model_id = factory.Faker("slug")
    layer = "dense_0/kernel"
    params = factory.SubFactory(ChaoticParamsFactory, length=32)
    reference_digest = factory.Faker("sha256")
    created_at = factory.Faker("date_time", tzinfo=timezone.utc)
