from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from ..validators import validate_range, validate_strictly_increasing


class ValidatorsTest(SimpleTestCase):
    def test_strictly_increasing(self) -> None:
        validate_strictly_increasing([4, 8, 16])
        validate_strictly_increasing([])
        for values in ([4, 4], [8, 4]):
            with self.subTest(values=values):
                with self.assertRaises(ValidationError) as cm:
                    validate_strictly_increasing(values)
                self.assertEqual(cm.exception.code, "not_increasing")

    def test_range(self) -> None:
        validate_range((3.57, 4.0), "r")
        cases = [((1.0,), "range_shape"), ((0.5, 0.5), "degenerate_range")]
        for bounds, code in cases:
            with self.subTest(bounds=bounds):
                with self.assertRaises(ValidationError) as cm:
                    validate_range(bounds, "r")
                self.assertEqual(cm.exception.code, code)
