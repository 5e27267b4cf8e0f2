# -*- coding: utf-8 -*-
"""
Experiment configuration.

Config files hold flat ``key = value`` lines; ``#`` starts a comment. Values
are read as YAML scalars, so ``rounds = 50`` is an integer and
``scheme = kha`` a string. Command line flags override file values.

Example::

    # 1-hop aggregation on a 20 UAV swarm
    num_uavs = 20
    area_width = 500
    area_height = 500
    scheme = kha
    k = 1
    rounds = 100
"""
import logging
import os
import re
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, Field, ValidationError, root_validator

from skyfed.exceptions import ConfigError
from skyfed.flcore import ModelKind, TaskSpec
from skyfed.overhead import Scheme
from skyfed.topology import SwarmConfig


logger = logging.getLogger(__name__)


class DatasetKind(str, Enum):
    SYNTHETIC = "synthetic"
    MNIST = "mnist"


class PartitionKind(str, Enum):
    IID = "iid"
    NONIID = "noniid"


class ExperimentConfig(BaseModel):
    num_uavs: int = Field(20, ge=2)
    area_width: float = Field(1000.0, gt=0)
    area_height: float = Field(1000.0, gt=0)
    comm_range: float = Field(150.0, gt=0)
    max_drift: float = Field(5.0, ge=0)

    scheme: Scheme = Scheme.FCA
    k: Optional[int] = Field(None, ge=1)
    data_weighted_fca: bool = False

    dataset: DatasetKind = DatasetKind.SYNTHETIC
    data_dir: Optional[str] = None
    partition: PartitionKind = PartitionKind.IID
    shards_per_uav: int = Field(2, ge=1)
    test_fraction: float = Field(0.2, gt=0, lt=1)
    synthetic_samples: int = Field(3000, ge=2)
    synthetic_features: int = Field(20, ge=1)
    synthetic_classes: int = Field(3, ge=2)
    separation: float = Field(3.0, gt=0)

    model: Optional[ModelKind] = None
    hidden_dim: int = Field(64, ge=1)
    lr: float = Field(0.05, gt=0)
    batch_size: int = Field(10, ge=1)

    rounds: int = Field(1, ge=1)
    layouts: int = Field(1, ge=1)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    kmeans_max_iters: int = Field(100, ge=1)
    kmeans_restarts: int = Field(8, ge=1)
    workers: int = Field(1, ge=1)
    out: Path = Path("metrics.csv")
    ledger_dir: Optional[Path] = None

    class Config:
        extra = "forbid"
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _check(cls, values):
        if values["scheme"] == Scheme.KHA and values.get("k") is None:
            raise ValueError("k is required when scheme = kha")
        if values["scheme"] != Scheme.KHA and values.get("k") is not None:
            raise ValueError(f"k is only valid with scheme = kha, not {values['scheme'].value}")
        if values["comm_range"] <= 2 * values["max_drift"]:
            raise ValueError("comm_range must be larger than twice max_drift")
        if values.get("model") is None:
            values["model"] = (
                ModelKind.MLP
                if values["dataset"] == DatasetKind.MNIST
                else ModelKind.LOGISTIC
            )
        if values["dataset"] == DatasetKind.MNIST and values.get("data_dir") is None:
            values["data_dir"] = os.environ.get("SKYFED_DATA_DIR")
        return values

    def swarm_config(self, rng_seed: int) -> SwarmConfig:
        return SwarmConfig(
            num_uavs=self.num_uavs,
            area_width=self.area_width,
            area_height=self.area_height,
            comm_range=self.comm_range,
            max_drift=self.max_drift,
            rng_seed=rng_seed,
        )

    def task_spec(self, input_dim: int, num_classes: int) -> TaskSpec:
        return TaskSpec(
            kind=self.model,
            input_dim=input_dim,
            hidden_dim=self.hidden_dim if self.model == ModelKind.MLP else None,
            num_classes=num_classes,
        )


def read_config_file(path: Union[os.PathLike, str]) -> Dict[str, Tuple[Any, int]]:
    """
    Parse a ``key = value`` file into ``{key: (value, line number)}``.

    Raises
    ------
    ConfigError
        On lines without ``=``, empty keys, repeated keys and values which are
        not YAML scalars.
    """
    entries: Dict[str, Tuple[Any, int]] = {}
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, text = line.partition("=")
            key = key.strip()
            if not sep or not key:
                raise ConfigError(
                    f"expected 'key = value', got {raw.strip()!r}", lineno, str(path)
                )
            if key in entries:
                raise ConfigError(
                    f"{key} already set on line {entries[key][1]}", lineno, str(path)
                )
            try:
                value = yaml.safe_load(text.strip()) if text.strip() else None
            except yaml.YAMLError as e:
                raise ConfigError(f"cannot parse value of {key}: {e}", lineno, str(path))
            if isinstance(value, (dict, list)):
                raise ConfigError(f"{key} must be a single value", lineno, str(path))
            entries[key] = (value, lineno)
    return entries


def load_config(
    path: Optional[Union[os.PathLike, str]] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    Build the experiment config from an optional file and flag overrides;
    overrides equal to ``None`` are ignored.

    Validation errors point at the file line which set the offending key.
    """
    entries = read_config_file(path) if path is not None else {}
    values = {key: value for key, (value, _) in entries.items()}
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        config = ExperimentConfig(**values)
    except ValidationError as e:
        raise _config_error(e, entries, path) from e
    logger.debug(f"Experiment config: {config.json()}")
    return config


def _config_error(error: ValidationError, entries, path) -> ConfigError:
    first = error.errors()[0]
    field = str(first["loc"][0])
    if field == "__root__":
        message = first["msg"]
        # cross-field errors point at the first key they name which the file set
        named = [word for word in re.findall(r"\w+", message) if word in entries]
        field = named[0] if named else field
    else:
        message = f"{field}: {first['msg']}"
    line = entries[field][1] if field in entries else None
    return ConfigError(message, line, str(path) if path is not None and line else None)
