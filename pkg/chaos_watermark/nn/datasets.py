import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from chaos_watermark.utils.files import atomic_write

from . import constants
from .exceptions import DatasetError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Feature rows scaled into [0, 1] with matching one-hot label rows.
    """

    features: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.float64)

        if features.ndim != 2 or labels.ndim != 2:
            raise DatasetError("Features and labels must both be 2-d")
        if len(features) != len(labels):
            raise DatasetError(
                f"{len(features)} feature rows but {len(labels)} label rows"
            )
        if features.size and (
            not np.all(np.isfinite(features))
            or features.min() < 0.0
            or features.max() > 1.0
        ):
            raise DatasetError("Features must lie in [0, 1]")
        if labels.size and not (
            np.all((labels == 0.0) | (labels == 1.0))
            and np.all(labels.sum(axis=1) == 1.0)
        ):
            raise DatasetError("Labels must be one-hot rows")

        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.features)

    @property
    def feature_count(self) -> int:
        return int(self.features.shape[1])

    @property
    def class_count(self) -> int:
        return int(self.labels.shape[1])

    @property
    def targets(self) -> np.ndarray:
        """Class index of every row"""
        return np.argmax(self.labels, axis=1)

    def subset(self, indices: np.ndarray) -> "Dataset":
        return Dataset(features=self.features[indices], labels=self.labels[indices])


def one_hot(targets: np.ndarray, class_count: int) -> np.ndarray:
    targets = np.asarray(targets)
    if targets.size and (targets.min() < 0 or targets.max() >= class_count):
        raise DatasetError(f"Class indices must lie in [0, {class_count})")
    labels = np.zeros((targets.size, class_count))
    labels[np.arange(targets.size), targets.astype(np.int64)] = 1.0
    return labels


def make_blobs(
    samples: int,
    features: int,
    classes: int,
    spread: float = 0.05,
    seed: int = 0,
) -> Dataset:
    """
    Gaussian clusters around uniformly drawn centres, clipped into [0, 1].
    Every class gets the same number of rows, give or take one.
    """
    if samples < 1 or features < 1 or classes < 2:
        raise DatasetError("Need at least one sample, one feature and two classes")

    rng = np.random.default_rng(seed)
    centres = rng.uniform(0.15, 0.85, size=(classes, features))
    targets = rng.permutation(np.arange(samples) % classes)
    points = centres[targets] + rng.normal(0.0, spread, size=(samples, features))
    return Dataset(features=np.clip(points, 0.0, 1.0), labels=one_hot(targets, classes))


def split_half(data: Dataset) -> Tuple[Dataset, Dataset]:
    """First half of the rows, then the rest"""
    middle = len(data) // 2
    return data.subset(np.arange(middle)), data.subset(np.arange(middle, len(data)))


def train_test_split(
    data: Dataset, holdout: float = 0.2, seed: int = 0
) -> Tuple[Dataset, Dataset]:
    if not 0.0 < holdout < 1.0:
        raise DatasetError("The held-out fraction must lie in (0, 1)")

    order = np.random.default_rng(seed).permutation(len(data))
    cut = len(data) - int(round(len(data) * holdout))
    return data.subset(order[:cut]), data.subset(order[cut:])


def read_idx(path: PathLike) -> np.ndarray:
    """
    Reads an IDX file: two zero bytes, a type byte, a dimension count and
    big-endian 32-bit extents, followed by the big-endian values.
    """
    data = Path(path).read_bytes()
    if len(data) < 4 or data[:2] != b"\x00\x00":
        raise DatasetError(f"{path} is not an IDX file")

    type_code, ndim = data[2], data[3]
    if type_code not in constants.IDX_DTYPES:
        raise DatasetError(f"{path} has unknown IDX type 0x{type_code:02x}")

    header_size = 4 + 4 * ndim
    if len(data) < header_size:
        raise DatasetError(f"{path} ends inside its header")
    shape = struct.unpack(f">{ndim}I", data[4:header_size])

    dtype = np.dtype(constants.IDX_DTYPES[type_code])
    expected = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
    if len(data) - header_size != expected:
        raise DatasetError(
            f"{path} holds {len(data) - header_size} payload bytes, "
            f"expected {expected}"
        )
    return np.frombuffer(data, dtype=dtype, offset=header_size).reshape(shape)


def write_idx(path: PathLike, array: np.ndarray, type_code: int) -> None:
    if type_code not in constants.IDX_DTYPES:
        raise DatasetError(f"Unknown IDX type 0x{type_code:02x}")

    array = np.asarray(array)
    header = struct.pack(">BBBB", 0, 0, type_code, array.ndim)
    header += struct.pack(f">{array.ndim}I", *array.shape)
    payload = np.ascontiguousarray(array, dtype=constants.IDX_DTYPES[type_code])
    with atomic_write(path) as f:
        f.write(header + payload.tobytes())


def load_dataset(directory: PathLike) -> Dataset:
    """
    Loads images.idx and labels.idx from a directory. Unsigned byte images
    are divided by 255, floating point images must already lie in [0, 1].
    """
    root = Path(directory)
    images = read_idx(root / constants.IMAGES_FILENAME)
    targets = read_idx(root / constants.LABELS_FILENAME)

    if targets.ndim != 1:
        raise DatasetError("Labels must be a 1-d array of class indices")
    if not np.issubdtype(targets.dtype, np.integer):
        raise DatasetError("Labels must be stored as integers")

    features = images.reshape(len(images), -1).astype(np.float64)
    if images.dtype == np.dtype(">u1"):
        features /= 255.0

    class_count = int(targets.max()) + 1 if targets.size else 0
    data = Dataset(features=features, labels=one_hot(targets, class_count))
    logger.info(
        "Loaded %d rows of %d features in %d classes from %s",
        len(data),
        data.feature_count,
        data.class_count,
        root,
    )
    return data


def save_dataset(directory: PathLike, data: Dataset) -> None:
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    write_idx(root / constants.IMAGES_FILENAME, data.features, constants.IDX_DOUBLE)
    write_idx(root / constants.LABELS_FILENAME, data.targets, constants.IDX_UBYTE)
