"""Results files (JSON lines) and their tabular views."""

from __future__ import annotations

__all__ = (
    "write_results",
    "read_results",
    "trace_table",
    "summary_table",
)

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
from astropy.table import Table

from hopso.vqe._errors import ResultsFileError
from hopso.vqe._vqe import ExperimentResult, RunRecord, Summary

if TYPE_CHECKING:
    from collections.abc import Sequence
    from os import PathLike


def write_results(
    path: str | PathLike[str], result: ExperimentResult, **meta: Any
) -> None:
    """Write one ``run`` record per run, in run order, then the ``summary``.

    Extra keyword arguments are stored in the summary record.
    """
    lines = [json.dumps({"kind": "run", **r.to_dict()}) for r in result.records]
    lines.append(json.dumps({"kind": "summary", **result.summary.to_dict(), **meta}))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_results(path: str | PathLike[str]) -> ExperimentResult:
    """Read a file written by `write_results`.

    Raises
    ------
    ResultsFileError
        If the file is missing, empty, malformed or has no summary record.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        msg = f"cannot read results file {path}: {exc.strerror or exc}"
        raise ResultsFileError(msg) from exc

    records: list[RunRecord] = []
    summary: Summary | None = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            kind = data.pop("kind")
            if kind == "run":
                records.append(RunRecord.from_dict(data))
            elif kind == "summary":
                summary = Summary.from_dict(data)
            else:
                msg = f"unknown record kind {kind!r}"
                raise ValueError(msg)  # noqa: TRY301
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            msg = f"{path}, line {lineno}: malformed record ({exc})"
            raise ResultsFileError(msg) from None

    if not records:
        msg = f"{path}: no run records"
        raise ResultsFileError(msg)
    if summary is None:
        msg = f"{path}: no summary record"
        raise ResultsFileError(msg)
    return ExperimentResult(records, summary)


def trace_table(records: Sequence[RunRecord]) -> Table:
    """One row per (run, iteration) with the global-best value.

    Raises
    ------
    ResultsFileError
        If a run's trace ever increases.
    """
    runs, iterations, values = [], [], []
    for record in records:
        trace = np.asarray(record.trace, dtype=float)
        if np.any(np.diff(trace) > 0):
            i = int(np.argmax(np.diff(trace) > 0)) + 1
            msg = f"trace of run {record.run} increases at iteration {i}"
            raise ResultsFileError(msg)
        runs.append(np.full(trace.size, record.run))
        iterations.append(np.arange(trace.size))
        values.append(trace)

    return Table(
        {
            "run": np.concatenate(runs) if runs else np.zeros(0, dtype=int),
            "iteration": np.concatenate(iterations) if runs else np.zeros(0, dtype=int),
            "best_value": np.concatenate(values) if runs else np.zeros(0),
        }
    )


def summary_table(summary: Summary) -> Table:
    """The summary as a two-row table: measured and exactly re-evaluated."""
    table = Table(
        {
            "energies": ["measured", "exact"],
            "median": [summary.median, summary.exact_median],
            "iqr": [summary.iqr, summary.exact_iqr],
            "chem_acc_fraction": [
                np.nan if summary.chemical_accuracy_fraction is None
                else summary.chemical_accuracy_fraction,
                np.nan if summary.exact_chemical_accuracy_fraction is None
                else summary.exact_chemical_accuracy_fraction,
            ],
        }
    )
    table["median"].format = ".9f"
    table["iqr"].format = ".3e"
    table["chem_acc_fraction"].format = ".2f"
    table.meta["runs"] = summary.runs
    table.meta["ground_energy"] = summary.ground_energy
    return table
