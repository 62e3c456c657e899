from django.test import SimpleTestCase

import numpy as np

from ..exceptions import (
    DuplicateTensorError,
    ShapeCountMismatchError,
    UnknownDtypeError,
    UnknownLayerError,
)
from ..factories import ModelWeightsFactory, WeightTensorFactory
from ..weights import ModelWeights, WeightTensor, flatten_layer, unflatten_layer


class WeightTensorTest(SimpleTestCase):
    def test_values_are_copied_and_read_only(self) -> None:
        source = np.ones((2, 2))
        tensor = WeightTensor(name="dense_0/kernel", values=source)
        source[0, 0] = 5.0

        self.assertEqual(tensor.values[0, 0], 1.0)
        with self.assertRaises(ValueError):
            tensor.values[0, 0] = 2.0

    def test_rejects_zero_extent(self) -> None:
        with self.assertRaises(ShapeCountMismatchError):
            WeightTensor(name="empty", values=np.zeros((0, 3)))

    def test_rejects_unsupported_dtype(self) -> None:
        with self.assertRaises(UnknownDtypeError):
            WeightTensor(name="ints", values=np.zeros((2, 2), dtype=np.int32))

    def test_equality_is_bitwise(self) -> None:
        a = WeightTensor(name="t", values=np.array([0.0, 1.0]))
        b = WeightTensor(name="t", values=np.array([-0.0, 1.0]))
        self.assertNotEqual(a, b)
        self.assertEqual(a, WeightTensor(name="t", values=np.array([0.0, 1.0])))
        self.assertNotEqual(
            a, WeightTensor(name="t", values=np.array([0.0, 1.0], dtype=np.float32))
        )


class ModelWeightsTest(SimpleTestCase):
    def test_duplicate_names_rejected(self) -> None:
        tensor = WeightTensorFactory(name="dense_0/kernel")
        with self.assertRaises(DuplicateTensorError):
            ModelWeights(tensors=(tensor, tensor))

    def test_get_unknown_layer(self) -> None:
        weights = ModelWeightsFactory()
        with self.assertRaises(UnknownLayerError):
            weights.get("foo")

    def test_order_preserved(self) -> None:
        weights = ModelWeightsFactory(sizes=(3, 5, 2))
        self.assertEqual(
            weights.names,
            ["dense_0/kernel", "dense_0/bias", "dense_1/kernel", "dense_1/bias"],
        )

    def test_replace(self) -> None:
        weights = ModelWeightsFactory()
        replacement = WeightTensor(name="dense_0/bias", values=np.zeros(8))
        replaced = weights.replace(replacement)

        self.assertEqual(replaced.names, weights.names)
        self.assertEqual(replaced.get("dense_0/bias"), replacement)
        self.assertEqual(replaced.get("dense_0/kernel"), weights.get("dense_0/kernel"))
        self.assertNotEqual(weights.get("dense_0/bias"), replacement)

        with self.assertRaises(UnknownLayerError):
            weights.replace(WeightTensor(name="foo", values=np.zeros(1)))


class FlattenLayerTest(SimpleTestCase):
    def test_row_major(self) -> None:
        weights = ModelWeights(
            tensors=(WeightTensor(name="k", values=np.array([[1.0, 2.0], [3.0, 4.0]])),)
        )
        np.testing.assert_array_equal(flatten_layer(weights, "k"), [1, 2, 3, 4])

    def test_unflatten_inverts_flatten(self) -> None:
        for shape in [(1,), (7,), (3, 4), (2, 3, 4), (1, 1, 1, 5)]:
            for dtype in (np.float32, np.float64):
                with self.subTest(shape=shape, dtype=dtype):
                    tensor = WeightTensorFactory(shape=shape, dtype=dtype)
                    weights = ModelWeights(tensors=(tensor,))
                    restored = unflatten_layer(
                        tensor, flatten_layer(weights, tensor.name)
                    )
                    self.assertEqual(restored, tensor)

    def test_unknown_layer(self) -> None:
        with self.assertRaises(UnknownLayerError):
            flatten_layer(ModelWeightsFactory(), "foo")

    def test_unflatten_wrong_length(self) -> None:
        tensor = WeightTensorFactory(shape=(3, 3))
        with self.assertRaises(ShapeCountMismatchError):
            unflatten_layer(tensor, np.zeros(8))
