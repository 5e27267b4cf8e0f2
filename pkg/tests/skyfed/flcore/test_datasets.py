# -*- coding: utf-8 -*-

import gzip
import struct

import numpy as np
import pytest

from skyfed.flcore import (
    DatasetError,
    load_mnist,
    mnist_available,
    read_idx_images,
    read_idx_labels,
    synthetic_blobs,
)


def write_images(path, images, compress=False):
    count, rows, cols = images.shape
    payload = struct.pack(">4I", 0x803, count, rows, cols) + images.astype(
        np.uint8
    ).tobytes()
    opener = gzip.open if compress else open
    with opener(str(path), "wb") as f:
        f.write(payload)


def write_labels(path, labels, compress=False):
    payload = struct.pack(">2I", 0x801, len(labels)) + np.asarray(
        labels, dtype=np.uint8
    ).tobytes()
    opener = gzip.open if compress else open
    with opener(str(path), "wb") as f:
        f.write(payload)


@pytest.fixture
def mnist_dir(tmpdir):
    rng = np.random.default_rng(0)
    write_images(
        tmpdir.join("train-images-idx3-ubyte.gz"),
        rng.integers(0, 256, size=(6, 28, 28)),
        compress=True,
    )
    write_labels(tmpdir.join("train-labels-idx1-ubyte.gz"), [0, 1, 2, 3, 4, 5], True)
    write_images(
        tmpdir.join("t10k-images-idx3-ubyte"), rng.integers(0, 256, size=(2, 28, 28))
    )
    write_labels(tmpdir.join("t10k-labels-idx1-ubyte"), [9, 8])
    return tmpdir


def test_read_idx_images(tmpdir):
    images = np.array([[[0, 255], [51, 102]]])
    write_images(tmpdir.join("img"), images)
    np.testing.assert_allclose(read_idx_images(tmpdir.join("img")), [[0, 1, 0.2, 0.4]])


def test_read_idx_labels_gzip(tmpdir):
    write_labels(tmpdir.join("lab.gz"), [3, 1, 4], compress=True)
    assert read_idx_labels(tmpdir.join("lab.gz")).tolist() == [3, 1, 4]


def test_wrong_magic(tmpdir):
    write_labels(tmpdir.join("lab"), [1])
    with pytest.raises(DatasetError, match="not an image file"):
        read_idx_images(tmpdir.join("lab"))


def test_label_reader_rejects_images(tmpdir):
    write_images(tmpdir.join("img"), np.zeros((1, 2, 2)))
    with pytest.raises(DatasetError, match="not a label file"):
        read_idx_labels(tmpdir.join("img"))


def test_truncated_header(tmpdir):
    path = tmpdir.join("img")
    path.write_binary(struct.pack(">2I", 0x803, 1))
    with pytest.raises(DatasetError, match="truncated IDX header"):
        read_idx_images(path)


def test_truncated_file(tmpdir):
    path = tmpdir.join("lab")
    path.write_binary(struct.pack(">2I", 0x801, 5) + b"\x01\x02")
    with pytest.raises(DatasetError, match="expected 5 labels"):
        read_idx_labels(path)


def test_load_mnist(mnist_dir):
    train, test = load_mnist(mnist_dir)
    assert train.features.shape == (6, 784)
    assert test.labels.tolist() == [9, 8]
    assert train.num_classes == 10
    assert mnist_available(mnist_dir)


def test_load_mnist_from_environment(mnist_dir, monkeypatch):
    monkeypatch.setenv("SKYFED_DATA_DIR", str(mnist_dir))
    train, _ = load_mnist()
    assert len(train) == 6


def test_mnist_missing(tmpdir, monkeypatch):
    monkeypatch.delenv("SKYFED_DATA_DIR", raising=False)
    assert not mnist_available(tmpdir)
    with pytest.raises(DatasetError):
        load_mnist(tmpdir)
    with pytest.raises(DatasetError):
        load_mnist()


def test_synthetic_blobs():
    data = synthetic_blobs(300, num_features=20, num_classes=3, seed=7)
    assert data.features.shape == (300, 20)
    assert np.bincount(data.labels).tolist() == [100, 100, 100]
    means = np.stack([data.features[data.labels == c].mean(axis=0) for c in range(3)])
    distance = np.linalg.norm(means[0] - means[1])
    assert distance == pytest.approx(3.0, abs=0.6)
    again = synthetic_blobs(300, num_features=20, num_classes=3, seed=7)
    np.testing.assert_array_equal(data.features, again.features)


def test_synthetic_blobs_need_dimensions():
    with pytest.raises(DatasetError):
        synthetic_blobs(30, num_features=2, num_classes=3)
