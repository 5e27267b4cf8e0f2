from .schemes import SchemeSpec, fca, intra_cluster_aggregate, kha, khop_neighbourhood
from .workflow import (
    RoundState,
    TrainingParams,
    evaluate,
    initial_state,
    run_round,
)
