from typing import TYPE_CHECKING, Dict, List, Type

from django.core.exceptions import ValidationError

import numpy as np

from . import constants

if TYPE_CHECKING:
    from .training import TrainConfig


class Optimizer:
    """
    Updates parameter arrays in place from their gradients. Subclasses keep
    whatever per-parameter state they need between steps.
    """

    name: str

    def __init__(self, config: "TrainConfig") -> None:
        self.config = config
        self.learning_rate = config.learning_rate

    def step(self, params: List[np.ndarray], grads: List[np.ndarray]) -> None:
        raise NotImplementedError


class OptimizerRegistry:
    """
    Registry for optimizer types

    Registering an optimizer makes it selectable by name in a TrainConfig.
    """

    def __init__(self) -> None:
        self.optimizers: Dict[str, Type[Optimizer]] = {}

    def register(self, optimizer_class: Type[Optimizer]) -> Type[Optimizer]:
        self.optimizers[optimizer_class.name] = optimizer_class
        return optimizer_class

    def get(self, name: str) -> Type[Optimizer]:
        try:
            return self.optimizers[name]
        except KeyError:
            raise ValidationError(
                f"Unknown optimizer {name!r}, expected one of "
                f"{', '.join(sorted(self.optimizers))}",
                code="unknown_optimizer",
            )

    def create(self, config: "TrainConfig") -> Optimizer:
        return self.get(config.optimizer)(config)


optimizer_registry = OptimizerRegistry()


@optimizer_registry.register
class SGDMomentum(Optimizer):
    name = constants.OPTIMIZERS.sgd

    def __init__(self, config: "TrainConfig") -> None:
        super().__init__(config)
        self.momentum = config.momentum
        self.velocity: List[np.ndarray] = []

    def step(self, params: List[np.ndarray], grads: List[np.ndarray]) -> None:
        if not self.velocity:
            self.velocity = [np.zeros_like(param) for param in params]

        for param, grad, velocity in zip(params, grads, self.velocity):
            velocity *= self.momentum
            velocity -= self.learning_rate * grad
            param += velocity


@optimizer_registry.register
class Adam(Optimizer):
    name = constants.OPTIMIZERS.adam

    def __init__(self, config: "TrainConfig") -> None:
        super().__init__(config)
        self.beta1 = config.beta1
        self.beta2 = config.beta2
        self.eps = config.eps
        self.t = 0
        self.m: List[np.ndarray] = []
        self.v: List[np.ndarray] = []

    def step(self, params: List[np.ndarray], grads: List[np.ndarray]) -> None:
        if not self.m:
            self.m = [np.zeros_like(param) for param in params]
            self.v = [np.zeros_like(param) for param in params]

        self.t += 1
        correction1 = 1.0 - self.beta1**self.t
        correction2 = 1.0 - self.beta2**self.t
        for param, grad, m, v in zip(params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * grad
            v *= self.beta2
            v += (1.0 - self.beta2) * grad**2
            m_hat = m / correction1
            v_hat = v / correction2
            param -= self.learning_rate * m_hat / (np.sqrt(v_hat) + self.eps)
