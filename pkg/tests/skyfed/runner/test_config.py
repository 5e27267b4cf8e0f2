# -*- coding: utf-8 -*-

from pathlib import Path

import pytest

from skyfed.exceptions import ConfigError
from skyfed.flcore import ModelKind
from skyfed.overhead import Scheme
from skyfed.runner import (
    DatasetKind,
    ExperimentConfig,
    PartitionKind,
    load_config,
    read_config_file,
)


def write(tmpdir, text):
    path = tmpdir.join("experiment.conf")
    path.write_text(text, "utf-8")
    return path


def test_defaults():
    config = ExperimentConfig()
    assert config.scheme == Scheme.FCA
    assert config.k is None
    assert config.model == ModelKind.LOGISTIC
    assert config.out == Path("metrics.csv")
    assert config.swarm_config(3).sigma == 140.0


def test_read_config_file(tmpdir):
    path = write(
        tmpdir,
        "# a comment\n"
        "num_uavs = 20\n"
        "\n"
        "scheme = kha   # trailing comment\n"
        "k = 2\n"
        "lr = 0.035\n"
        "out = results/run.csv\n",
    )
    entries = read_config_file(path)
    assert entries == {
        "num_uavs": (20, 2),
        "scheme": ("kha", 4),
        "k": (2, 5),
        "lr": (0.035, 6),
        "out": ("results/run.csv", 7),
    }


def test_load_config_with_overrides(tmpdir):
    path = write(tmpdir, "num_uavs = 20\nrounds = 5\nscheme = kha\nk = 1\n")
    config = load_config(path, {"rounds": 9, "seed": None, "partition": "noniid"})
    assert config.num_uavs == 20
    assert config.rounds == 9
    assert config.seed == 0
    assert config.scheme == Scheme.KHA
    assert config.partition == PartitionKind.NONIID


def test_kha_without_k(tmpdir):
    path = write(tmpdir, "rounds = 3\nscheme = kha\n")
    with pytest.raises(ConfigError, match="k is required") as excinfo:
        load_config(path)
    assert excinfo.value.line == 2


def test_k_without_kha():
    with pytest.raises(ConfigError, match="k is only valid"):
        load_config(overrides={"k": 2})


@pytest.mark.parametrize(
    "text,line,message",
    [
        ("rounds = 3\ncomm_range = 10\nmax_drift = 5\n", 2, "comm_range must be larger"),
        ("rounds = 3\nmax_drift = 80\n", 2, "twice max_drift"),
        ("scheme = fca\nk = 2\n", 2, "k is only valid"),
    ],
)
def test_cross_field_errors_name_the_line(tmpdir, text, line, message):
    with pytest.raises(ConfigError, match=message) as excinfo:
        load_config(write(tmpdir, text))
    assert excinfo.value.line == line


@pytest.mark.parametrize(
    "text,line,message",
    [
        ("rounds = 0\n", 1, "rounds"),
        ("num_uavs = 20\nlr = -1\n", 2, "lr"),
        ("num_uavs = 20\nbogus = 1\n", 2, "bogus"),
        ("scheme = star\n", 1, "scheme"),
    ],
)
def test_invalid_values_name_the_line(tmpdir, text, line, message):
    path = write(tmpdir, text)
    with pytest.raises(ConfigError, match=message) as excinfo:
        load_config(path)
    assert excinfo.value.line == line
    assert f":{line}:" in str(excinfo.value)


@pytest.mark.parametrize(
    "text,line",
    [("rounds 5\n", 1), ("rounds = 5\nrounds = 6\n", 2), ("seed = [1, 2]\n", 1)],
)
def test_malformed_lines(tmpdir, text, line):
    with pytest.raises(ConfigError) as excinfo:
        read_config_file(write(tmpdir, text))
    assert excinfo.value.line == line


def test_mnist_defaults(monkeypatch):
    monkeypatch.setenv("SKYFED_DATA_DIR", "/data/mnist")
    config = ExperimentConfig(dataset="mnist")
    assert config.dataset == DatasetKind.MNIST
    assert config.model == ModelKind.MLP
    assert config.data_dir == "/data/mnist"
    task = config.task_spec(784, 10)
    assert task.hidden_dim == 64


def test_config_is_frozen():
    config = ExperimentConfig()
    with pytest.raises(TypeError):
        config.rounds = 4
