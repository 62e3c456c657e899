from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

import numpy as np

from ..factories import ChaoticParamsFactory
from ..params import ChaoticParams
from ..sequence import generate_chaotic_batch, generate_chaotic_sequence


class GenerateChaoticSequenceTest(SimpleTestCase):
    def test_hand_iterated_prefix(self) -> None:
        sequence = generate_chaotic_sequence(
            ChaoticParams(r=3.9, x0=0.5, epsilon=0.01, length=2)
        )
        self.assertEqual(sequence.dtype, np.float64)
        np.testing.assert_allclose(sequence, [0.975, 0.0950625], rtol=0, atol=1e-12)

    def test_third_element(self) -> None:
        sequence = generate_chaotic_sequence(
            ChaoticParams(r=3.9, x0=0.5, epsilon=0.01, length=3)
        )
        self.assertAlmostEqual(sequence[2], 0.3355, delta=1e-4)

    def test_zero_length(self) -> None:
        sequence = generate_chaotic_sequence(
            ChaoticParams(r=3.9, x0=0.5, epsilon=0.01, length=0)
        )
        self.assertEqual(sequence.shape, (0,))

        unset = generate_chaotic_sequence(ChaoticParams(r=3.9, x0=0.5, epsilon=0.01))
        self.assertEqual(unset.shape, (0,))

    def test_invalid_params_rejected(self) -> None:
        with self.assertRaises(ValidationError):
            generate_chaotic_sequence(
                ChaoticParams(r=3.0, x0=0.5, epsilon=0.01, length=10)
            )

    def test_orbit_collapse_rejected(self) -> None:
        with self.assertRaises(ValidationError) as cm:
            generate_chaotic_sequence(
                ChaoticParams(r=4.0, x0=0.5, epsilon=0.01, length=3)
            )
        self.assertEqual(cm.exception.code, "orbit_collapsed")

    def test_properties_over_random_keys(self) -> None:
        for params in ChaoticParamsFactory.build_batch(1000):
            first = generate_chaotic_sequence(params)
            second = generate_chaotic_sequence(params)

            self.assertEqual(len(first), params.length)
            self.assertTrue(np.array_equal(first, second))
            self.assertTrue(np.all((first > 0.0) & (first < 1.0)))

            # Recurrence holds bit for bit
            expected = params.r * first[:-1] * (1.0 - first[:-1])
            self.assertTrue(np.array_equal(first[1:], expected))
            self.assertEqual(first[0], params.r * params.x0 * (1.0 - params.x0))

    def test_long_sequence_stays_in_range(self) -> None:
        sequence = generate_chaotic_sequence(
            ChaoticParams(r=3.99, x0=0.123, epsilon=0.01, length=1_000_000)
        )
        self.assertTrue(np.all((sequence > 0.0) & (sequence < 1.0)))

    def test_sensitivity_to_initial_value(self) -> None:
        # Not 0.5: a nudge at the critical point is squared away in one step
        a = generate_chaotic_sequence(
            ChaoticParams(r=3.9, x0=0.3, epsilon=0.01, length=100)
        )
        b = generate_chaotic_sequence(
            ChaoticParams(r=3.9, x0=0.3 + 1e-9, epsilon=0.01, length=100)
        )
        self.assertTrue(np.any(np.abs(a - b) > 0.1))


class GenerateChaoticBatchTest(SimpleTestCase):
    def test_rows_match_scalar_generator(self) -> None:
        keys = ChaoticParamsFactory.build_batch(20, length=300)
        batch = generate_chaotic_batch(
            np.array([key.r for key in keys]),
            np.array([key.x0 for key in keys]),
            300,
        )
        self.assertEqual(batch.shape, (20, 300))
        for row, key in zip(batch, keys):
            self.assertTrue(np.array_equal(row, generate_chaotic_sequence(key)))

    def test_zero_length(self) -> None:
        batch = generate_chaotic_batch(np.array([3.9]), np.array([0.5]), 0)
        self.assertEqual(batch.shape, (1, 0))
