# -*- coding: utf-8 -*-

import logging

import numpy as np
import pytest

from skyfed.flcore import TaskSpec, synthetic_blobs
from skyfed.topology import Topology

from tests import utils as tu

logger = logging.getLogger(__name__)


@pytest.fixture
def line_positions():
    """
    Three clusters of three UAVs, 120 m apart along the x axis; the middle
    UAV of every cluster is its head.
    """
    return np.array(
        [
            [x, y]
            for x in (10.0, 130.0, 250.0)
            for y in (20.0, 10.0, 0.0)
        ]
    )


@pytest.fixture
def line_topology(line_positions):
    return Topology.from_positions(
        line_positions, comm_range=150.0, max_drift=5.0, area=(300.0, 300.0)
    )


@pytest.fixture
def line_layout(line_positions):
    return tu.make_layout(line_positions, [0, 0, 0, 1, 1, 1, 2, 2, 2])


@pytest.fixture
def blob_task():
    return TaskSpec(kind="logistic", input_dim=5, num_classes=3)


@pytest.fixture
def blob_data():
    data = synthetic_blobs(300, num_features=5, num_classes=3, separation=4.0, seed=3)
    return data.split(0.2, seed=0)
