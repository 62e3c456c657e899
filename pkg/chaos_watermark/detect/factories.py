from typing import Dict

import factory
import numpy as np
from factory.random import randgen

from . import constants
from .features import ActivationFeatureSet


def clustered_features(
    classes: int, per_class: int, width: int, spread: float
) -> np.ndarray:
    """One Gaussian cluster per label, centred at distance 3 from the origin"""
    rng = np.random.default_rng(randgen.getrandbits(32))
    centres = rng.normal(0.0, 1.0, size=(classes, width))
    centres *= 3.0 / np.linalg.norm(centres, axis=1, keepdims=True)
    rows = [
        centre + rng.normal(0.0, spread, size=(per_class, width)) for centre in centres
    ]
    return np.concatenate(rows)


class ActivationFeatureSetFactory(factory.Factory):
    class Meta:
        model = ActivationFeatureSet

    class Params:
        classes = 3
        per_class = 40
        width = 5
        spread = 0.1

    features = factory.LazyAttribute(
        lambda o: clustered_features(o.classes, o.per_class, o.width, o.spread)
    )
    labels = factory.LazyAttribute(
        lambda o: np.repeat(np.arange(o.classes), o.per_class)
    )
    threshold = constants.DEFAULT_THRESHOLD

    @factory.lazy_attribute
    def kept(self) -> Dict[int, int]:
        return {label: self.per_class for label in range(self.classes)}

    @factory.lazy_attribute
    def discarded(self) -> Dict[int, int]:
        return {label: 0 for label in range(self.classes)}
