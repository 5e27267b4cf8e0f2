# -*- coding: utf-8 -*-
"""
Summaries of metrics CSV files: per scheme, the first round in which the
mean accuracy over layouts reaches a threshold, and the mean number of
messages per round.
"""
import logging
import os
from typing import Sequence, Union

import numpy as np
import pandas as pd

from skyfed.metrics import CSV_COLUMNS
from skyfed.overhead import Scheme
from .exceptions import SummaryError


logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.9
NOT_REACHED = "—"
SUMMARY_COLUMNS = [
    "scheme",
    "k",
    "layouts",
    "rounds",
    "rounds_to_threshold",
    "final_accuracy",
    "mean_msg_total",
]

_INT_COLUMNS = ["layout", "round", "Q", "msg_intra", "msg_inter", "msg_total"]
_FLOAT_COLUMNS = ["acc_mean", "loss_mean", "acc_min", "acc_max"]


def read_metrics_csv(path: Union[os.PathLike, str]) -> pd.DataFrame:
    """
    Read and validate one metrics file.

    Raises
    ------
    SummaryError
        With the file and line of the first malformed row.
    """
    try:
        raw = pd.read_csv(path, dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise SummaryError(f"{path}: {e}") from e
    if list(raw.columns) != CSV_COLUMNS:
        raise SummaryError(
            f"{path}:1: expected header {','.join(CSV_COLUMNS)}, "
            f"got {','.join(raw.columns)}"
        )

    schemes = {s.value for s in Scheme}
    for offset, row in enumerate(raw.itertuples(index=False)):
        # line 1 is the header
        line = offset + 2
        cells = row._asdict()
        if cells["scheme"] not in schemes:
            raise SummaryError(f"{path}:{line}: unknown scheme {cells['scheme']!r}")
        for column in _INT_COLUMNS + (["k"] if cells["k"] else []):
            if not _is_int(cells[column]):
                raise SummaryError(
                    f"{path}:{line}: {column} must be an integer, got {cells[column]!r}"
                )
        for column in _FLOAT_COLUMNS:
            if not _is_float(cells[column]):
                raise SummaryError(
                    f"{path}:{line}: {column} must be a number, got {cells[column]!r}"
                )

    frame = raw.copy()
    frame[_INT_COLUMNS] = frame[_INT_COLUMNS].astype(np.int64)
    frame[_FLOAT_COLUMNS] = frame[_FLOAT_COLUMNS].astype(float)
    frame["k"] = pd.to_numeric(frame["k"].mask(frame["k"] == "")).astype("Int64")
    return frame


def summarize(
    paths: Sequence[Union[os.PathLike, str]], threshold: float = DEFAULT_THRESHOLD
) -> pd.DataFrame:
    """
    One row per (scheme, k), ordered by scheme name and then k.

    ``rounds_to_threshold`` is the first round whose accuracy, averaged over
    layouts, is at least ``threshold``; missing if it is never reached.
    ``final_accuracy`` is that average at the last round.
    """
    if not paths:
        raise SummaryError("No metrics files given")
    frames = [read_metrics_csv(path) for path in paths]
    metrics = pd.concat(frames, ignore_index=True)
    if metrics.empty:
        raise SummaryError("Metrics files hold no rows")

    # k is at least 1 where set, so 0 stands in for "no k" and sorts first
    metrics["k_key"] = metrics["k"].fillna(0).astype(np.int64)
    rows = []
    for (scheme, k), group in metrics.groupby(["scheme", "k_key"], sort=True):
        by_round = group.groupby("round")["acc_mean"].mean().sort_index()
        reached = by_round[by_round >= threshold]
        rows.append(
            {
                "scheme": scheme,
                "k": int(k) or None,
                "layouts": int(group["layout"].nunique()),
                "rounds": int(by_round.index.max()),
                "rounds_to_threshold": int(reached.index[0]) if len(reached) else None,
                "final_accuracy": float(by_round.iloc[-1]),
                "mean_msg_total": float(group["msg_total"].mean()),
            }
        )
    summary = pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
    summary["k"] = summary["k"].astype("Int64")
    summary["rounds_to_threshold"] = summary["rounds_to_threshold"].astype("Int64")
    logger.debug(f"Summarised {len(metrics)} rows into {len(summary)} schemes")
    return summary.reset_index(drop=True)


def format_summary(summary: pd.DataFrame) -> str:
    """Aligned text table; a threshold never reached shows as ``—``."""
    text = summary.astype(object).copy()
    text["k"] = [_cell(v, "") for v in summary["k"]]
    text["rounds_to_threshold"] = [
        _cell(v, NOT_REACHED) for v in summary["rounds_to_threshold"]
    ]
    text["final_accuracy"] = [f"{v:.4f}" for v in summary["final_accuracy"]]
    text["mean_msg_total"] = [f"{v:.1f}" for v in summary["mean_msg_total"]]
    return text.to_string(index=False)


def write_summary_tsv(summary: pd.DataFrame, path: Union[os.PathLike, str]):
    """Tab separated summary; missing values are left blank."""
    summary.to_csv(path, sep="\t", index=False, na_rep="", float_format="%.6f")


def _cell(value, missing: str) -> str:
    return missing if pd.isna(value) else str(int(value))


def _is_int(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def _is_float(text: str) -> bool:
    try:
        value = float(text)
    except ValueError:
        return False
    return bool(np.isfinite(value))
