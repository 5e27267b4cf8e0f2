# -*- coding: utf-8 -*-

"""
CLI interfaces
"""

import logging
import sys
import traceback
from typing import Optional, Tuple

import click
from pydantic import ValidationError

from skyfed import __version__
from skyfed.exceptions import ConfigError, SkyfedError
from skyfed.runner import (
    DEFAULT_THRESHOLD,
    DatasetKind,
    PartitionKind,
    SummaryError,
    format_summary,
    load_config,
    overhead_sweep,
    run_experiment,
    summarize,
    write_summary_tsv,
)
from skyfed.overhead import Scheme
from .custom_types import IntList
from .exceptions_reporter import ReportLevel, ExceptionsReporter

_exceptions_reporter = ExceptionsReporter(
    (
        (Exception, 1),
        (ConfigError, 2),
        (ValidationError, 2),
        (SummaryError, 1),
    )
)

logger = logging.getLogger(__name__)


def exceptions_reporter_options(command):
    command = click.option(
        "--exceptions-reporter-file",
        envvar="EXCEPTIONS_REPORTER_FILE",
        help="JSON output file for exception information",
    )(command)
    return click.option(
        "--exceptions-report-level",
        type=click.Choice(ReportLevel.get_names(), case_sensitive=False),
        default=ReportLevel.MESSAGE.name,
        envvar="EXCEPTIONS_REPORT_LEVEL",
        help="Details level for exception reporting",
    )(command)


def _fail(exceptions_reporter_file: Optional[str], exceptions_report_level: str):
    exc_type, exc_value, exc_traceback = sys.exc_info()
    if isinstance(exc_value, (SkyfedError, ValidationError)):
        click.echo(f"Error: {exc_value}", err=True)
    else:
        traceback.print_exc()
    sys.exit(
        _exceptions_reporter.handle(
            (exc_type, exc_value, exc_traceback),
            exceptions_reporter_file,
            exceptions_report_level,
        )
    )


@click.group("skyfed")
@click.version_option(version=__version__, message=__version__)
@click.option(
    "--log-level",
    type=str,
    default="INFO",
    help="Run with custom log-level.",
    envvar="SKYFED_LOG_LEVEL",
)
@click.pass_context
def skyfed(skyfed_ctx: click.Context, **ctx):
    """
    Clustered federated learning on simulated UAV swarms.
    """
    logging.basicConfig(
        level=getattr(logging, str(skyfed_ctx.params.get("log_level")).upper()),
        format="[%(asctime)s] %(levelname)s [%(name)s.%(funcName)s:%(lineno)d] %(message)s",
    )
    skyfed_ctx.obj = skyfed_ctx.params


@click.command()
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    envvar="SKYFED_CONFIG",
    help="Experiment config file of 'key = value' lines.",
)
@click.option(
    "--scheme",
    type=click.Choice([s.value for s in Scheme]),
    help="Aggregation scheme.",
)
@click.option("--k", type=int, help="Hop radius of k-hop aggregation.")
@click.option("--uavs", "num_uavs", type=int, help="Number of UAVs in the swarm.")
@click.option("--rounds", type=int, help="Training rounds per layout.")
@click.option("--layouts", type=int, help="Number of random swarm layouts.")
@click.option("--seed", type=int, help="Master seed.")
@click.option(
    "--dataset", type=click.Choice([d.value for d in DatasetKind]), help="Dataset."
)
@click.option(
    "--partition",
    type=click.Choice([p.value for p in PartitionKind]),
    help="How training data is spread over the UAVs.",
)
@click.option("--workers", type=int, help="Layouts run in parallel.")
@click.option("--out", type=click.Path(dir_okay=False), help="Metrics CSV file.")
@exceptions_reporter_options
def simulate(
    config_path: Optional[str],
    exceptions_reporter_file: Optional[str],
    exceptions_report_level: str,
    **overrides,
):
    """
    Deploy, cluster and train swarm layouts, writing one CSV row per layout
    and round.

    \b
    Flags override values from the config file.
    """
    try:
        config = load_config(config_path, overrides)
        logger.info(f"Metrics will be written to: {config.out}")
        run_experiment(config)
    except Exception:
        _fail(exceptions_reporter_file, exceptions_report_level)
    else:
        return 0


@click.command("summarize")
@click.argument(
    "csv-files", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False)
)
@click.option(
    "--threshold",
    type=click.FloatRange(0.0, 1.0),
    default=DEFAULT_THRESHOLD,
    show_default=True,
    help="Accuracy the rounds-to-threshold column refers to.",
)
@click.option(
    "--tsv",
    "tsv_path",
    type=click.Path(dir_okay=False),
    help="Also write the summary as tab separated values.",
)
@exceptions_reporter_options
def summarize_cli(
    csv_files: Tuple[str, ...],
    threshold: float,
    tsv_path: Optional[str],
    exceptions_reporter_file: Optional[str],
    exceptions_report_level: str,
):
    """
    Per scheme, the rounds needed to reach an accuracy threshold and the mean
    number of messages per round.
    """
    try:
        summary = summarize(csv_files, threshold)
        click.echo(format_summary(summary))
        if tsv_path:
            write_summary_tsv(summary, tsv_path)
    except Exception:
        _fail(exceptions_reporter_file, exceptions_report_level)
    else:
        return 0


@click.command("overhead")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Experiment config file; swarm geometry is taken from it.",
)
@click.option(
    "--uavs",
    type=IntList(min_value=2),
    default="10,20,30,40,50",
    show_default=True,
    help="Swarm sizes, comma separated.",
)
@click.option("--layouts", type=click.IntRange(min=1), default=100, show_default=True)
@click.option(
    "--k",
    "ks",
    type=IntList(min_value=1),
    default="1,2,3",
    show_default=True,
    help="Hop radii of k-hop aggregation, comma separated.",
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--out",
    type=click.Path(dir_okay=False),
    default="overhead.csv",
    show_default=True,
)
@exceptions_reporter_options
def overhead_cli(
    config_path: Optional[str],
    uavs: Tuple[int, ...],
    layouts: int,
    ks: Tuple[int, ...],
    seed: int,
    out: str,
    exceptions_reporter_file: Optional[str],
    exceptions_report_level: str,
):
    """
    Messages per round of conventional FL, FCA and k-hop aggregation over
    random layouts, without training.
    """
    try:
        base = load_config(config_path)
        frame = overhead_sweep(uavs, layouts, ks=ks, seed=seed, base=base)
        frame.to_csv(out, index=False, encoding="utf-8")
        logger.info(f"Wrote {len(frame)} rows to {out}")
    except Exception:
        _fail(exceptions_reporter_file, exceptions_report_level)
    else:
        return 0


skyfed.add_command(simulate)
skyfed.add_command(summarize_cli)
skyfed.add_command(overhead_cli)


if __name__ == "__main__":
    skyfed()
