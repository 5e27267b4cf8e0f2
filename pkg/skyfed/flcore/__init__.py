from .averaging import check_weights, fedavg, size_weights, uniform_average
from .data import (
    Dataset,
    DatasetShard,
    partition_iid,
    partition_noniid,
    pooled,
    shard_sizes,
)
from .datasets import (
    load_mnist,
    mnist_available,
    read_idx_images,
    read_idx_labels,
    synthetic_blobs,
)
from .exceptions import (
    AggregationWeightError,
    DatasetError,
    DimensionMismatchError,
    EmptyShardError,
    FLCoreError,
    NonFiniteModelError,
)
from .objectives import (
    cross_entropy,
    forward,
    global_objective,
    gradient,
    local_objective,
    predict,
)
from .task import ModelKind, ModelVector, TaskSpec, check_model
from .training import centralized_sgd, local_sgd
