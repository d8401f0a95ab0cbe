"""Fourier transforms of L^p functions through the primitive Psi_f."""

import csv
import io

from ._core import (
    HypothesisError,
    QuadratureResult,
    RunConfig,
    bq,
    bv_catalog,
    catalog,
    compare_constants,
    cq,
    exchange_check,
    execute,
    integrate_finite,
    integrate_line,
    inversion_sweep,
    invert,
    kernel_hypotheses,
    lp_norm,
    properties,
    psif,
    psif_grid,
)

HypothesisError.hypothesis = property(lambda self: self.args[0])


def run(subcommand, **options):
    """Run a CLI subcommand in process and return (rows, pass, messages).

    Rows are dicts of strings, as read back from the CSV report.
    """
    cfg = RunConfig()
    cfg.subcommand = subcommand
    for key, value in options.items():
        if not hasattr(cfg, key):
            raise TypeError(f"unknown option {key!r}")
        setattr(cfg, key, value)
    text, ok, messages = execute(cfg)
    return list(csv.DictReader(io.StringIO(text))), ok, messages


__all__ = [
    "HypothesisError",
    "QuadratureResult",
    "RunConfig",
    "bq",
    "bv_catalog",
    "catalog",
    "compare_constants",
    "cq",
    "exchange_check",
    "execute",
    "integrate_finite",
    "integrate_line",
    "inversion_sweep",
    "invert",
    "kernel_hypotheses",
    "lp_norm",
    "properties",
    "psif",
    "psif_grid",
    "run",
]
