import csv
import io

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

import numpy as np

from chaos_watermark.nn.datasets import make_blobs
from chaos_watermark.nn.network import DenseNet, layer_activations, predict
from chaos_watermark.nn.training import TrainConfig, train

from ..exceptions import NoSamplesRetainedError
from ..factories import ActivationFeatureSetFactory
from ..features import RetentionExporter, collect_features, combine, split_features


class CollectFeaturesTest(SimpleTestCase):
    inputs: np.ndarray
    net: DenseNet

    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        data = make_blobs(samples=300, features=4, classes=3, spread=0.1, seed=2)
        cls.inputs = data.features
        cls.net = train(
            DenseNet.build((4, 12, 3), seed=2),
            data,
            TrainConfig(learning_rate=0.01, epochs=30, seed=2),
        ).net

    def test_filter_soundness(self) -> None:
        for threshold in (0.7, 0.9):
            with self.subTest(threshold=threshold):
                features = collect_features(
                    self.net, self.inputs, "dense_0", threshold=threshold, label=1
                )
                confidence = predict(self.net, self.inputs).max(axis=1)
                retained = confidence >= threshold

                self.assertEqual(features.kept, {1: int(retained.sum())})
                self.assertEqual(features.discarded, {1: int((~retained).sum())})
                np.testing.assert_array_equal(
                    features.features,
                    layer_activations(self.net, self.inputs[retained], "dense_0"),
                )
                np.testing.assert_array_equal(features.labels, 1)
                self.assertEqual(features.threshold, threshold)

    def test_threshold_bounds(self) -> None:
        for threshold in (0.0, 1.0, 1.5):
            with self.subTest(threshold=threshold):
                with self.assertRaises(ValidationError):
                    collect_features(self.net, self.inputs, "dense_0", threshold)

    def test_untrained_net_retains_nothing(self) -> None:
        untrained = DenseNet.build((4, 12, 3), seed=9)
        with self.assertRaises(NoSamplesRetainedError) as cm:
            collect_features(untrained, self.inputs, "dense_0", 0.999999, label=2)
        self.assertEqual(cm.exception.label, 2)


class CombineTest(SimpleTestCase):
    def test_balances_by_truncation(self) -> None:
        sets = [
            ActivationFeatureSetFactory(classes=1, per_class=count)
            for count in (10, 7, 12)
        ]
        for label, s in enumerate(sets):
            s.labels[:] = label
        combined = combine(sets)

        self.assertEqual(len(combined), 21)
        np.testing.assert_array_equal(np.bincount(combined.labels), [7, 7, 7])
        np.testing.assert_array_equal(combined.features[:7], sets[0].features[:7])

    def test_without_balancing(self) -> None:
        sets = [
            ActivationFeatureSetFactory(classes=1, per_class=count)
            for count in (10, 7)
        ]
        self.assertEqual(len(combine(sets, balance=False)), 17)

    def test_mixed_thresholds(self) -> None:
        with self.assertRaises(ValidationError):
            combine(
                [
                    ActivationFeatureSetFactory(threshold=0.9),
                    ActivationFeatureSetFactory(threshold=0.7),
                ]
            )


class SplitFeaturesTest(SimpleTestCase):
    def test_split_per_label(self) -> None:
        features = ActivationFeatureSetFactory(classes=3, per_class=11)
        train_set, test_set = split_features(features)

        np.testing.assert_array_equal(np.bincount(train_set.labels), [5, 5, 5])
        np.testing.assert_array_equal(np.bincount(test_set.labels), [6, 6, 6])
        np.testing.assert_array_equal(train_set.features[:5], features.features[:5])
        np.testing.assert_array_equal(test_set.features[:6], features.features[5:11])


class RetentionExporterTest(SimpleTestCase):
    def test_counts_per_model(self) -> None:
        sets = [
            ActivationFeatureSetFactory(
                classes=1,
                per_class=count,
                labels=np.full(count, label),
                kept={label: count},
                discarded={label: 20 - count},
            )
            for label, count in enumerate((10, 7, 12))
        ]
        output = io.StringIO()
        RetentionExporter(combine(sets)).write(output)

        output.seek(0)
        self.assertEqual(
            list(csv.DictReader(output)),
            [
                {"model": "original", "kept": "10", "discarded": "10", "used": "7"},
                {"model": "watermarked", "kept": "7", "discarded": "13", "used": "7"},
                {"model": "fine_tuned", "kept": "12", "discarded": "8", "used": "7"},
            ],
        )
