import itertools
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

from django.core.exceptions import ValidationError

import numpy as np

from chaos_watermark.tensor_store.weights import ModelWeights, flatten_layer
from chaos_watermark.utils.exports import Exporter
from chaos_watermark.utils.validators import validate_strictly_increasing

from . import constants
from .exceptions import ZeroRangeError


@dataclass(frozen=True)
class DensityData:
    edges: np.ndarray
    counts: np.ndarray
    densities: np.ndarray
    label: str = ""

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    def integral(self) -> float:
        return float(np.sum(self.densities * self.widths))


def _validate_bin_count(bin_count: int) -> None:
    if bin_count < constants.MIN_BIN_COUNT:
        raise ValidationError(
            "At least %(min)s bins are needed, got %(bins)s",
            code="too_few_bins",
            params={"min": constants.MIN_BIN_COUNT, "bins": bin_count},
        )


def _value_range(values: np.ndarray, label: str) -> Tuple[float, float]:
    low, high = float(values.min()), float(values.max())
    if low == high:
        raise ZeroRangeError(f"Layer values of {label or 'model'} are all {low!r}")
    return low, high


def density_histogram(
    weights: ModelWeights,
    layer: str,
    bin_count: int = constants.DEFAULT_BIN_COUNT,
    label: str = "",
    edges: Optional[Sequence[float]] = None,
) -> DensityData:
    """
    Equal-width histogram of the layer values over [min, max].

    Bins are half-open except the last, which includes the maximum. Passing
    `edges` bins onto that grid instead, so several models can share one.
    """
    values = flatten_layer(weights, layer).astype(np.float64)

    if edges is None:
        _validate_bin_count(bin_count)
        counts, bin_edges = np.histogram(
            values, bins=bin_count, range=_value_range(values, label)
        )
    else:
        bin_edges = np.asarray(edges, dtype=np.float64)
        _validate_bin_count(bin_edges.size - 1)
        validate_strictly_increasing(list(bin_edges))
        counts, bin_edges = np.histogram(values, bins=bin_edges)

    total = int(counts.sum())
    if total == 0:
        raise ZeroRangeError(f"No values of {label or 'model'} fall inside the bins")

    densities = counts / (total * np.diff(bin_edges))
    return DensityData(
        edges=bin_edges, counts=counts, densities=densities, label=label
    )


def shared_edges(
    models: Iterable[ModelWeights],
    layer: str,
    bin_count: int = constants.DEFAULT_BIN_COUNT,
) -> np.ndarray:
    """Equal-width edges spanning the layer values of every model"""
    _validate_bin_count(bin_count)
    values = np.concatenate(
        [flatten_layer(weights, layer).astype(np.float64) for weights in models]
    )
    low, high = _value_range(values, "shared range")
    return np.linspace(low, high, bin_count + 1)


def density_distance(a: DensityData, b: DensityData) -> float:
    """L1 distance between two densities binned on the same edges, in [0, 2]"""
    if not np.array_equal(a.edges, b.edges):
        raise ValidationError(
            "Densities must share bin edges to be compared", code="edges_mismatch"
        )
    return float(np.sum(np.abs(a.densities - b.densities) * a.widths))


class DensityExporter(Exporter):
    fields = ["bin_left", "bin_right", "count", "density"]

    def __init__(self, density: DensityData):
        self.density = density

    def get_rows(self) -> Iterable[Dict[str, Any]]:
        edges = self.density.edges
        for i, (count, density) in enumerate(
            zip(self.density.counts, self.density.densities)
        ):
            yield {
                "bin_left": repr(float(edges[i])),
                "bin_right": repr(float(edges[i + 1])),
                "count": int(count),
                "density": repr(float(density)),
            }


class DensityDistanceExporter(Exporter):
    """Pairwise L1 distances between densities binned on shared edges"""

    fields = ["a", "b", "distance"]

    def __init__(self, densities: Sequence[DensityData]):
        self.densities = densities

    def get_rows(self) -> Iterable[Dict[str, Any]]:
        for a, b in itertools.combinations(self.densities, 2):
            yield {"a": a.label, "b": b.label, "distance": repr(density_distance(a, b))}
