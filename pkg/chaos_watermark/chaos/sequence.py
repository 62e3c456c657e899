from django.core.exceptions import ValidationError

import numpy as np

from .params import ChaoticParams


def generate_chaotic_sequence(params: ChaoticParams) -> np.ndarray:
    """
    Iterates x <- r * x * (1 - x) starting from x0 and returns the first
    `length` iterates as float64. x0 itself is not part of the output.
    """
    params.full_clean()

    length = params.length or 0
    sequence = np.empty(length, dtype=np.float64)
    r = float(params.r)
    x = float(params.x0)
    for i in range(length):
        x = r * x * (1.0 - x)
        sequence[i] = x

    if length and not np.all((sequence > 0.0) & (sequence < 1.0)):
        # r = 4 sends x0 = 0.5 to 1 and then to the fixed point 0.
        raise ValidationError(
            "The orbit of x0=%(x0)r under r=%(r)r leaves the interval (0, 1)",
            code="orbit_collapsed",
            params={"x0": params.x0, "r": params.r},
        )

    return sequence


def generate_chaotic_batch(r: np.ndarray, x0: np.ndarray, length: int) -> np.ndarray:
    """
    Generates one sequence per (r, x0) pair, shaped (len(r), length).

    No validation is done here. Each row is bit-identical to what
    `generate_chaotic_sequence` returns for the same pair.
    """
    r = np.asarray(r, dtype=np.float64)
    x = np.array(x0, dtype=np.float64)
    batch = np.empty((r.shape[0], length), dtype=np.float64)
    for i in range(length):
        x = r * x * (1.0 - x)
        batch[:, i] = x
    return batch
