"""
Reader and writer for the CWMT weight container.

Layout, all integers little-endian::

    b"CWMT" | version <u4> | tensor count <u4>
    per tensor:
        name length <u4> | name (utf-8) | dtype tag <u1> | rank <u4>
        | extents <u4 * rank> | payload (row-major, little-endian)
"""
import hashlib
import logging
import struct
from typing import List, Tuple

import numpy as np

from chaos_watermark.utils.files import atomic_write

from . import constants
from .exceptions import (
    BadMagicError,
    EmptyWeightsError,
    ShapeCountMismatchError,
    TruncatedPayloadError,
    UnknownDtypeError,
    UnsupportedVersionError,
)
from .weights import ModelWeights, WeightTensor

logger = logging.getLogger(__name__)

_U8 = struct.Struct("<B")
_U32 = struct.Struct("<I")


def _dtype_tag(dtype: np.dtype) -> int:
    for tag, code in constants.DTYPE_TAGS.items():
        if np.dtype(code) == dtype.newbyteorder("<"):
            return tag
    raise UnknownDtypeError(f"No CWMT tag for dtype {dtype}")


def encode_weights(weights: ModelWeights) -> bytes:
    if not len(weights):
        raise EmptyWeightsError("Refusing to encode a model without tensors")

    chunks = [
        constants.MAGIC,
        _U32.pack(weights.format_version),
        _U32.pack(len(weights)),
    ]
    for tensor in weights:
        name = tensor.name.encode("utf-8")
        tag = _dtype_tag(tensor.dtype)
        chunks.append(_U32.pack(len(name)))
        chunks.append(name)
        chunks.append(_U8.pack(tag))
        chunks.append(_U32.pack(len(tensor.shape)))
        chunks.extend(_U32.pack(extent) for extent in tensor.shape)
        payload = np.ascontiguousarray(
            tensor.values, dtype=constants.DTYPE_TAGS[tag]
        )
        chunks.append(payload.tobytes(order="C"))
    return b"".join(chunks)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def take(self, count: int, what: str) -> bytes:
        end = self.offset + count
        if end > len(self.data):
            raise TruncatedPayloadError(
                f"Truncated {what}: needed {count} bytes at offset {self.offset}, "
                f"{len(self.data) - self.offset} left"
            )
        chunk = self.data[self.offset : end]
        self.offset = end
        return chunk

    def u32(self, what: str) -> int:
        return _U32.unpack(self.take(_U32.size, what))[0]

    def u8(self, what: str) -> int:
        return _U8.unpack(self.take(_U8.size, what))[0]


def _decode_tensor(reader: _Reader, index: int) -> WeightTensor:
    name_length = reader.u32(f"name length of tensor {index}")
    try:
        name = reader.take(name_length, f"name of tensor {index}").decode("utf-8")
    except UnicodeDecodeError as e:
        raise ShapeCountMismatchError(f"Tensor {index} name is not utf-8") from e

    tag = reader.u8(f"dtype of {name!r}")
    if tag not in constants.DTYPE_TAGS:
        raise UnknownDtypeError(f"Unknown dtype tag {tag} for tensor {name!r}")
    dtype = np.dtype(constants.DTYPE_TAGS[tag])

    rank = reader.u32(f"rank of {name!r}")
    shape: Tuple[int, ...] = tuple(
        reader.u32(f"extent {axis} of {name!r}") for axis in range(rank)
    )
    if rank == 0 or 0 in shape:
        raise ShapeCountMismatchError(f"Tensor {name!r} has invalid shape {shape}")

    count = int(np.prod(shape, dtype=np.int64))
    payload = reader.take(count * dtype.itemsize, f"payload of {name!r}")
    values = np.frombuffer(payload, dtype=dtype).reshape(shape, order="C")
    # Native byte order in memory, the file stays little-endian
    return WeightTensor(name=name, values=values.astype(dtype.newbyteorder("=")))


def decode_weights(data: bytes) -> ModelWeights:
    reader = _Reader(data)

    magic = reader.take(len(constants.MAGIC), "magic")
    if magic != constants.MAGIC:
        raise BadMagicError(f"Not a CWMT file, magic is {magic!r}")

    version = reader.u32("version")
    if version != constants.FORMAT_VERSION:
        raise UnsupportedVersionError(
            f"CWMT version {version} is not supported "
            f"(expected {constants.FORMAT_VERSION})"
        )

    count = reader.u32("tensor count")
    if count == 0:
        raise EmptyWeightsError("CWMT file declares no tensors")

    tensors: List[WeightTensor] = [
        _decode_tensor(reader, index) for index in range(count)
    ]

    if reader.offset != len(data):
        raise ShapeCountMismatchError(
            f"{len(data) - reader.offset} trailing bytes after {count} tensors"
        )

    return ModelWeights(tensors=tuple(tensors), format_version=version)


def save_weights(weights: ModelWeights, destination: str) -> None:
    data = encode_weights(weights)
    with atomic_write(destination) as fh:
        fh.write(data)
    logger.info(
        "Saved %d tensors (%d bytes) to %s", len(weights), len(data), destination
    )


def load_weights(source: str) -> ModelWeights:
    with open(source, "rb") as fh:
        data = fh.read()
    weights = decode_weights(data)
    logger.debug("Loaded %d tensors from %s", len(weights), source)
    return weights


def weights_digest(weights: ModelWeights) -> str:
    """sha256 of the CWMT encoding, identical weights give identical digests"""
    return hashlib.sha256(encode_weights(weights)).hexdigest()
