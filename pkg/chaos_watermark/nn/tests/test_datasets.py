import os
import struct
import tempfile

from django.test import SimpleTestCase

import numpy as np

from .. import constants
from ..datasets import (
    Dataset,
    load_dataset,
    make_blobs,
    one_hot,
    read_idx,
    save_dataset,
    split_half,
    train_test_split,
    write_idx,
)
from ..exceptions import DatasetError


class DatasetTest(SimpleTestCase):
    def test_valid(self) -> None:
        data = Dataset(features=np.array([[0.0, 1.0], [0.5, 0.25]]), labels=np.eye(2))
        self.assertEqual(len(data), 2)
        self.assertEqual(data.class_count, 2)
        self.assertEqual(data.feature_count, 2)
        np.testing.assert_array_equal(data.targets, [0, 1])

    def test_features_out_of_range(self) -> None:
        with self.assertRaises(DatasetError):
            Dataset(features=np.array([[1.5]]), labels=np.array([[1.0, 0.0]]))

    def test_labels_not_one_hot(self) -> None:
        for labels in ([[0.5, 0.5]], [[1.0, 1.0]], [[0.0, 0.0]]):
            with self.subTest(labels=labels):
                with self.assertRaises(DatasetError):
                    Dataset(features=np.array([[0.5]]), labels=np.array(labels))

    def test_row_counts_differ(self) -> None:
        with self.assertRaises(DatasetError):
            Dataset(features=np.zeros((3, 2)), labels=np.eye(2))

    def test_one_hot(self) -> None:
        np.testing.assert_array_equal(
            one_hot(np.array([2, 0]), 3), [[0, 0, 1], [1, 0, 0]]
        )
        with self.assertRaises(DatasetError):
            one_hot(np.array([3]), 3)


class SplitTest(SimpleTestCase):
    def test_make_blobs(self) -> None:
        data = make_blobs(samples=90, features=6, classes=3, seed=1)
        self.assertEqual(data.features.shape, (90, 6))
        np.testing.assert_array_equal(np.bincount(data.targets), [30, 30, 30])

        again = make_blobs(samples=90, features=6, classes=3, seed=1)
        np.testing.assert_array_equal(data.features, again.features)

    def test_split_half(self) -> None:
        data = make_blobs(samples=11, features=2, classes=2)
        first, second = split_half(data)
        self.assertEqual((len(first), len(second)), (5, 6))
        np.testing.assert_array_equal(first.features, data.features[:5])
        np.testing.assert_array_equal(second.features, data.features[5:])

    def test_train_test_split(self) -> None:
        data = make_blobs(samples=100, features=2, classes=2)
        train_set, test_set = train_test_split(data, holdout=0.25, seed=4)
        self.assertEqual((len(train_set), len(test_set)), (75, 25))

        rows = {tuple(row) for row in data.features}
        split_rows = {tuple(row) for row in train_set.features} | {
            tuple(row) for row in test_set.features
        }
        self.assertEqual(rows, split_rows)

        with self.assertRaises(DatasetError):
            train_test_split(data, holdout=1.0)


class IDXTest(SimpleTestCase):
    def setUp(self) -> None:
        self.tmpdir = tempfile.TemporaryDirectory()

    def tearDown(self) -> None:
        self.tmpdir.cleanup()

    def path(self, name: str) -> str:
        return os.path.join(self.tmpdir.name, name)

    def test_reads_standard_layout(self) -> None:
        payload = bytes(range(6))
        with open(self.path("x.idx"), "wb") as f:
            f.write(b"\x00\x00\x08\x02" + struct.pack(">II", 2, 3) + payload)

        array = read_idx(self.path("x.idx"))
        self.assertEqual(array.shape, (2, 3))
        np.testing.assert_array_equal(array.ravel(), list(range(6)))

    def test_write_and_read(self) -> None:
        values = np.array([[-1.5, 2.25], [3.0, 1e-9]])
        write_idx(self.path("x.idx"), values, constants.IDX_DOUBLE)
        with open(self.path("x.idx"), "rb") as f:
            self.assertEqual(f.read(4), b"\x00\x00\x0e\x02")
        np.testing.assert_array_equal(read_idx(self.path("x.idx")), values)

    def test_bad_files(self) -> None:
        cases = {
            "magic": b"\x01\x00\x08\x01" + struct.pack(">I", 1) + b"\x00",
            "type": b"\x00\x00\x07\x01" + struct.pack(">I", 1) + b"\x00",
            "short": b"\x00\x00\x08\x01" + struct.pack(">I", 3) + b"\x00",
            "header": b"\x00\x00\x08\x02\x00",
        }
        for name, data in cases.items():
            with self.subTest(name=name):
                with open(self.path(name), "wb") as f:
                    f.write(data)
                with self.assertRaises(DatasetError):
                    read_idx(self.path(name))

    def test_ubyte_images_are_scaled(self) -> None:
        directory = self.path("digits")
        os.makedirs(directory)
        images = np.array([[[0, 255], [51, 102]], [[255, 255], [0, 0]]])
        write_idx(
            os.path.join(directory, "images.idx"), images, constants.IDX_UBYTE
        )
        write_idx(
            os.path.join(directory, "labels.idx"), np.array([1, 0]), constants.IDX_UBYTE
        )

        data = load_dataset(directory)
        np.testing.assert_allclose(data.features[0], [0.0, 1.0, 0.2, 0.4])
        np.testing.assert_array_equal(data.labels, [[0, 1], [1, 0]])

    def test_save_and_load_dataset(self) -> None:
        data = make_blobs(samples=30, features=3, classes=3, seed=2)
        save_dataset(self.path("blobs"), data)
        loaded = load_dataset(self.path("blobs"))
        np.testing.assert_array_equal(loaded.features, data.features)
        np.testing.assert_array_equal(loaded.labels, data.labels)
