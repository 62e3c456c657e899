import io

from django.test import SimpleTestCase

import numpy as np

from chaos_watermark.nn.exceptions import DatasetError

from ..confusion import ConfusionExporter, confusion, format_confusion


class ConfusionTest(SimpleTestCase):
    def test_perfect_predictions(self) -> None:
        labels = [0, 1, 2, 2, 0]
        matrix = confusion(labels, labels, 3)
        np.testing.assert_array_equal(matrix.counts, np.diag([2, 1, 2]))
        self.assertEqual(matrix.accuracy, 1.0)
        self.assertEqual(matrix.errors, 0)

    def test_single_predicted_class(self) -> None:
        matrix = confusion([0, 1, 2, 1], [1, 1, 1, 1], 3)
        np.testing.assert_array_equal(matrix.counts[:, [0, 2]], 0)
        np.testing.assert_array_equal(matrix.counts[:, 1], [1, 2, 1])

    def test_mass_conservation(self) -> None:
        rng = np.random.default_rng(0)
        true = rng.integers(0, 3, size=7920)
        predicted = true.copy()
        predicted[17] = (predicted[17] + 1) % 3
        matrix = confusion(true, predicted, 3)

        self.assertEqual(matrix.total, 7920)
        self.assertEqual(matrix.errors, 1)
        self.assertAlmostEqual(matrix.accuracy, 7919 / 7920)

    def test_label_out_of_range(self) -> None:
        with self.assertRaises(DatasetError):
            confusion([0, 3], [0, 1], 3)


class ConfusionOutputTest(SimpleTestCase):
    def setUp(self) -> None:
        self.matrix = confusion([0, 0, 1, 2, 2], [0, 1, 1, 2, 2], 3)

    def test_exporter(self) -> None:
        buffer = io.StringIO()
        ConfusionExporter(self.matrix).write(buffer)
        self.assertEqual(
            buffer.getvalue(),
            "true,original,watermarked,fine_tuned\n"
            "original,1,1,0\n"
            "watermarked,0,1,0\n"
            "fine_tuned,0,0,2\n",
        )

    def test_text_summary(self) -> None:
        summary = format_confusion(self.matrix)
        self.assertTrue(summary.startswith("Accuracy: 0.8000 (1 errors in 5 samples)"))
        self.assertIn("watermarked", summary)
