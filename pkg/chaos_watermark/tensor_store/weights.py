from dataclasses import dataclass, field
from typing import Any, Iterator, List, Tuple

import numpy as np

from . import constants
from .exceptions import (
    DuplicateTensorError,
    ShapeCountMismatchError,
    UnknownDtypeError,
    UnknownLayerError,
)

SUPPORTED_DTYPES = (np.dtype(np.float32), np.dtype(np.float64))


@dataclass(frozen=True, eq=False)
class WeightTensor:
    """
    A named, shaped block of weights. The values are copied on construction and
    made read-only, so a tensor can be shared freely once built.
    """

    name: str
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, copy=True)
        if values.dtype not in SUPPORTED_DTYPES:
            raise UnknownDtypeError(
                f"Tensor {self.name!r} has unsupported dtype {values.dtype}"
            )
        if values.ndim == 0 or 0 in values.shape:
            raise ShapeCountMismatchError(
                f"Tensor {self.name!r} has an empty extent in shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.values.shape)

    @property
    def dtype(self) -> np.dtype:
        return self.values.dtype

    @property
    def size(self) -> int:
        return int(self.values.size)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, WeightTensor):
            return NotImplemented
        return (
            self.name == other.name
            and self.dtype == other.dtype
            and self.shape == other.shape
            and self.values.tobytes() == other.values.tobytes()
        )

    def __repr__(self) -> str:
        return (
            f"WeightTensor(name={self.name!r}, shape={self.shape}, "
            f"dtype={self.dtype})"
        )


@dataclass(frozen=True, eq=False)
class ModelWeights:
    """Ordered collection of tensors, in the model's layer order."""

    tensors: Tuple[WeightTensor, ...] = field(default_factory=tuple)
    format_version: int = constants.FORMAT_VERSION

    def __post_init__(self) -> None:
        tensors = tuple(self.tensors)
        seen = set()
        for tensor in tensors:
            if tensor.name in seen:
                raise DuplicateTensorError(f"Duplicate tensor name {tensor.name!r}")
            seen.add(tensor.name)
        object.__setattr__(self, "tensors", tensors)

    def __iter__(self) -> Iterator[WeightTensor]:
        return iter(self.tensors)

    def __len__(self) -> int:
        return len(self.tensors)

    def __contains__(self, name: object) -> bool:
        return any(tensor.name == name for tensor in self.tensors)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, ModelWeights):
            return NotImplemented
        return (
            self.format_version == other.format_version
            and self.tensors == other.tensors
        )

    @property
    def names(self) -> List[str]:
        return [tensor.name for tensor in self.tensors]

    def get(self, name: str) -> WeightTensor:
        for tensor in self.tensors:
            if tensor.name == name:
                return tensor
        raise UnknownLayerError(
            f"Unknown layer {name!r}, available: {', '.join(self.names) or 'none'}"
        )

    def replace(self, tensor: WeightTensor) -> "ModelWeights":
        """Returns a copy with the same-named tensor swapped for `tensor`"""
        self.get(tensor.name)
        return ModelWeights(
            tensors=tuple(
                tensor if existing.name == tensor.name else existing
                for existing in self.tensors
            ),
            format_version=self.format_version,
        )


def flatten_layer(weights: ModelWeights, layer: str) -> np.ndarray:
    """Row-major copy of the named layer as a 1-d array"""
    return np.ravel(weights.get(layer).values, order="C").copy()


def unflatten_layer(tensor: WeightTensor, vector: np.ndarray) -> WeightTensor:
    """Inverse of `flatten_layer`, shaped and typed like `tensor`"""
    vector = np.asarray(vector)
    if vector.ndim != 1 or vector.size != tensor.size:
        raise ShapeCountMismatchError(
            f"Cannot reshape {vector.size} values into {tensor.name!r} "
            f"of shape {tensor.shape}"
        )
    return WeightTensor(
        name=tensor.name,
        values=vector.astype(tensor.dtype).reshape(tensor.shape, order="C"),
    )
