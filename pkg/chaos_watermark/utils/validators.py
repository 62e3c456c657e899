from typing import Sequence

from django.core.exceptions import ValidationError


def validate_strictly_increasing(values: Sequence[float]) -> None:
    if not all(values[i] < values[i + 1] for i in range(len(values) - 1)):
        raise ValidationError(
            "Values must be in strictly increasing order", code="not_increasing"
        )


def validate_range(bounds: Sequence[float], name: str) -> None:
    """Checks a (low, high) pair describes a non-degenerate interval"""
    if len(bounds) != 2:
        raise ValidationError(
            "%(name)s must be a (low, high) pair",
            code="range_shape",
            params={"name": name},
        )
    low, high = bounds
    if not low < high:
        raise ValidationError(
            "%(name)s range [%(low)s, %(high)s] is degenerate",
            code="degenerate_range",
            params={"name": name, "low": low, "high": high},
        )
