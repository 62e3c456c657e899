from datetime import datetime, timezone

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

import numpy as np
from freezegun import freeze_time

from chaos_watermark.chaos.factories import ChaoticParamsFactory
from chaos_watermark.chaos.params import ChaoticParams
from chaos_watermark.chaos.sequence import generate_chaotic_sequence
from chaos_watermark.tensor_store.cwmt import weights_digest
from chaos_watermark.tensor_store.exceptions import UnknownLayerError
from chaos_watermark.tensor_store.factories import ModelWeightsFactory
from chaos_watermark.tensor_store.weights import ModelWeights, WeightTensor

from ..embedding import embed, extract
from ..exceptions import LayerShapeMismatchError

KEY = ChaoticParams(r=3.9, x0=0.5, epsilon=0.01)


class EmbedTest(SimpleTestCase):
    def test_hand_computed_example(self) -> None:
        reference = ModelWeights(
            tensors=(WeightTensor(name="w", values=np.array([0.2, -0.1])),)
        )
        watermarked, manifest = embed(reference, "w", KEY)

        np.testing.assert_allclose(
            watermarked.get("w").values, [0.20975, -0.0990494], rtol=0, atol=1e-7
        )
        self.assertEqual(manifest.params.length, 2)

    @freeze_time("2024-05-01 12:00:00")
    def test_manifest_contents(self) -> None:
        reference = ModelWeightsFactory(sizes=(4, 8, 3))
        _, manifest = embed(reference, "dense_0/kernel", KEY, model_id="blobs")

        self.assertEqual(manifest.model_id, "blobs")
        self.assertEqual(manifest.layer, "dense_0/kernel")
        self.assertEqual(manifest.params, KEY.with_length(32))
        self.assertEqual(manifest.flatten_order, "row-major")
        self.assertEqual(manifest.tensor_scope, "kernel")
        self.assertEqual(manifest.reference_digest, weights_digest(reference))
        self.assertEqual(
            manifest.created_at, datetime(2024, 5, 1, 12, tzinfo=timezone.utc)
        )

    def test_locality(self) -> None:
        reference = ModelWeightsFactory(sizes=(4, 8, 8, 3))
        watermarked, _ = embed(reference, "dense_1/kernel", KEY)

        self.assertEqual(watermarked.names, reference.names)
        for name in reference.names:
            with self.subTest(name=name):
                if name == "dense_1/kernel":
                    self.assertNotEqual(watermarked.get(name), reference.get(name))
                else:
                    self.assertEqual(watermarked.get(name), reference.get(name))

    def test_magnitude_bounded_by_epsilon(self) -> None:
        reference = ModelWeightsFactory(sizes=(16, 32, 3))
        watermarked, _ = embed(reference, "dense_0/kernel", KEY)
        change = np.abs(
            watermarked.get("dense_0/kernel").values
            - reference.get("dense_0/kernel").values
        )
        self.assertLessEqual(change.max(), KEY.epsilon)
        self.assertGreater(change.min(), 0.0)

    def test_vanishing_epsilon(self) -> None:
        reference = ModelWeightsFactory()
        watermarked, _ = embed(
            reference, "dense_0/kernel", ChaoticParams(r=3.9, x0=0.5, epsilon=1e-300)
        )
        np.testing.assert_allclose(
            watermarked.get("dense_0/kernel").values,
            reference.get("dense_0/kernel").values,
            rtol=0,
            atol=1e-12,
        )

    def test_dtype_preserved(self) -> None:
        reference = ModelWeightsFactory(dtype=np.float32)
        watermarked, _ = embed(reference, "dense_0/kernel", KEY)
        self.assertEqual(watermarked.get("dense_0/kernel").dtype, np.float32)

    def test_length_mismatch(self) -> None:
        reference = ModelWeightsFactory(sizes=(4, 8, 3))
        with self.assertRaises(ValidationError) as cm:
            embed(reference, "dense_0/kernel", KEY.with_length(31))
        self.assertEqual(cm.exception.code, "length_mismatch")

    def test_invalid_key(self) -> None:
        reference = ModelWeightsFactory()
        with self.assertRaises(ValidationError):
            embed(reference, "dense_0/kernel", ChaoticParams(r=3.9, x0=0.5, epsilon=0))

    def test_unknown_layer(self) -> None:
        with self.assertRaises(UnknownLayerError):
            embed(ModelWeightsFactory(), "foo", KEY)


class ExtractTest(SimpleTestCase):
    def test_identical_models_give_zero_delta(self) -> None:
        reference = ModelWeightsFactory()
        delta = extract(reference, reference, "dense_0/kernel")
        self.assertEqual(len(delta), 32)
        self.assertFalse(np.any(delta.values))
        self.assertEqual(delta.mode, "reference")
        self.assertEqual((delta.suspect_size, delta.reference_size), (32, 32))

    def test_embed_then_extract_recovers_scaled_sequence(self) -> None:
        for _ in range(100):
            sizes = tuple(np.random.randint(2, 12, size=3))
            reference = ModelWeightsFactory(sizes=sizes)
            params = ChaoticParamsFactory(length=None)
            layer = "dense_1/kernel"

            watermarked, manifest = embed(reference, layer, params)
            delta = extract(watermarked, reference, layer)
            expected = params.epsilon * generate_chaotic_sequence(manifest.params)

            np.testing.assert_allclose(delta.values, expected, rtol=0, atol=1e-12)

    def test_literal_mode_measures_drift_since_watermarking(self) -> None:
        reference = ModelWeightsFactory()
        watermarked, _ = embed(reference, "dense_0/kernel", KEY)
        delta = extract(watermarked, watermarked, "dense_0/kernel", mode="literal")
        self.assertEqual(delta.mode, "literal")
        self.assertFalse(np.any(delta.values))

    def test_unknown_mode(self) -> None:
        reference = ModelWeightsFactory()
        with self.assertRaises(ValidationError):
            extract(reference, reference, "dense_0/kernel", mode="sideways")

    def test_shape_mismatch(self) -> None:
        a = ModelWeights(tensors=(WeightTensor(name="k", values=np.zeros((3, 3))),))
        b = ModelWeights(tensors=(WeightTensor(name="k", values=np.zeros((3, 4))),))
        with self.assertRaises(LayerShapeMismatchError):
            extract(a, b, "k")

    def test_unknown_layer(self) -> None:
        reference = ModelWeightsFactory()
        with self.assertRaises(UnknownLayerError):
            extract(reference, reference, "foo")
