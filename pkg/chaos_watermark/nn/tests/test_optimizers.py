from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

import numpy as np

from ..optimizers import Adam, SGDMomentum, optimizer_registry
from ..training import TrainConfig


class OptimizerRegistryTest(SimpleTestCase):
    def test_registered_optimizers(self) -> None:
        self.assertIs(optimizer_registry.get("sgd"), SGDMomentum)
        self.assertIs(optimizer_registry.get("adam"), Adam)

    def test_unknown_optimizer(self) -> None:
        with self.assertRaises(ValidationError) as cm:
            optimizer_registry.get("rmsprop")
        self.assertEqual(cm.exception.code, "unknown_optimizer")


class SGDMomentumTest(SimpleTestCase):
    def test_velocity_accumulates(self) -> None:
        optimizer = optimizer_registry.create(
            TrainConfig(optimizer="sgd", learning_rate=0.1, momentum=0.5)
        )
        param = np.array([1.0, -2.0])
        grad = np.array([1.0, 2.0])

        optimizer.step([param], [grad])
        np.testing.assert_allclose(param, [0.9, -2.2])
        optimizer.step([param], [grad])
        # v = 0.5 * v - lr * g
        np.testing.assert_allclose(param, [0.75, -2.5])


class AdamTest(SimpleTestCase):
    def test_first_step_is_learning_rate_sized(self) -> None:
        optimizer = optimizer_registry.create(TrainConfig(learning_rate=0.01))
        param = np.array([1.0, 1.0, 1.0])
        optimizer.step([param], [np.array([0.5, -3.0, 1e3])])
        np.testing.assert_allclose(param, [0.99, 1.01, 0.99], rtol=1e-6)

    def test_state_per_parameter(self) -> None:
        optimizer = optimizer_registry.create(TrainConfig(learning_rate=0.01))
        params = [np.zeros(2), np.zeros((2, 2))]
        optimizer.step(params, [np.ones(2), -np.ones((2, 2))])
        self.assertTrue(np.all(params[0] < 0))
        self.assertTrue(np.all(params[1] > 0))
