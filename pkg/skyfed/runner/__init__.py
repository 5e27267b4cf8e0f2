from .config import (
    DatasetKind,
    ExperimentConfig,
    PartitionKind,
    load_config,
    read_config_file,
)
from .exceptions import SummaryError
from .experiment import (
    OVERHEAD_COLUMNS,
    deploy_and_cluster,
    load_datasets,
    overhead_sweep,
    register_swarm,
    run_experiment,
    run_layout,
    write_metrics_csv,
)
from .summary import (
    DEFAULT_THRESHOLD,
    NOT_REACHED,
    SUMMARY_COLUMNS,
    format_summary,
    read_metrics_csv,
    summarize,
    write_summary_tsv,
)
