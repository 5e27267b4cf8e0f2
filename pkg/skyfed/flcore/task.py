# -*- coding: utf-8 -*-
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, root_validator

from .exceptions import DimensionMismatchError, NonFiniteModelError

# Flat parameter vector, float64
ModelVector = np.ndarray


class ModelKind(str, Enum):
    LOGISTIC = "logistic"
    MLP = "mlp"


class TaskSpec(BaseModel):
    """
    Classification model trained by the swarm.

    ``logistic`` is multinomial logistic regression with parameters
    ``W (input_dim x num_classes), b (num_classes)``. ``mlp`` adds a tanh
    hidden layer: ``W1 (input_dim x hidden_dim), b1, W2 (hidden_dim x
    num_classes), b2``. Parameters are flattened row-major in that order.

    Examples
    --------
    >>> TaskSpec(kind="logistic", input_dim=20, num_classes=3).dimension
    63
    >>> TaskSpec(kind="mlp", input_dim=4, hidden_dim=5, num_classes=3).dimension
    43
    """

    kind: ModelKind = ModelKind.LOGISTIC
    input_dim: int = Field(..., ge=1)
    hidden_dim: Optional[int] = Field(None, ge=1)
    num_classes: int = Field(..., ge=2)

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _hidden_dim_for_mlp(cls, values):
        if values["kind"] == ModelKind.MLP and values.get("hidden_dim") is None:
            raise ValueError("hidden_dim is required for the mlp model")
        if values["kind"] == ModelKind.LOGISTIC:
            values["hidden_dim"] = None
        return values

    @property
    def shapes(self) -> Dict[str, Tuple[int, ...]]:
        if self.kind == ModelKind.LOGISTIC:
            return {
                "W": (self.input_dim, self.num_classes),
                "b": (self.num_classes,),
            }
        return {
            "W1": (self.input_dim, self.hidden_dim),
            "b1": (self.hidden_dim,),
            "W2": (self.hidden_dim, self.num_classes),
            "b2": (self.num_classes,),
        }

    @property
    def dimension(self) -> int:
        return sum(int(np.prod(shape)) for shape in self.shapes.values())

    def unpack(self, model: ModelVector) -> Dict[str, np.ndarray]:
        """Views of the parameter blocks of ``model``."""
        check_model(self, model)
        blocks, offset = {}, 0
        for name, shape in self.shapes.items():
            size = int(np.prod(shape))
            blocks[name] = model[offset : offset + size].reshape(shape)
            offset += size
        return blocks

    def pack(self, blocks: Dict[str, np.ndarray]) -> ModelVector:
        return np.concatenate(
            [np.asarray(blocks[name], dtype=np.float64).ravel() for name in self.shapes]
        )

    def init_model(self, seed: int = 0) -> ModelVector:
        """
        Initial global model: zeros for logistic regression, Glorot-uniform
        weights and zero biases for the MLP.
        """
        if self.kind == ModelKind.LOGISTIC:
            return np.zeros(self.dimension, dtype=np.float64)
        rng = np.random.default_rng(seed)
        blocks = {}
        for name, shape in self.shapes.items():
            if len(shape) == 2:
                limit = np.sqrt(6.0 / (shape[0] + shape[1]))
                blocks[name] = rng.uniform(-limit, limit, size=shape)
            else:
                blocks[name] = np.zeros(shape)
        return self.pack(blocks)


def check_model(task: TaskSpec, model: ModelVector):
    if model.ndim != 1 or model.shape[0] != task.dimension:
        raise DimensionMismatchError(
            f"Expected a model vector of length {task.dimension}, got {model.shape}"
        )
    if not np.all(np.isfinite(model)):
        raise NonFiniteModelError("Model contains NaN or infinite weights")
