"""Bit-accurate distributed-arithmetic LMS adaptive filters."""

from ._core import (
    FilterConfig,
    Filter,
    Format,
    Refresh,
    Rounding,
    Scheme,
    StepSize,
    Variant,
    build_obc,
    build_tc,
    cost,
    da_output,
    quantize,
    reconstruct_obc,
    reconstruct_tc,
    run_experiment,
    slice_obc,
    slice_tc,
    to_real,
    verify,
)

__all__ = [
    "FilterConfig",
    "Filter",
    "Format",
    "Refresh",
    "Rounding",
    "Scheme",
    "StepSize",
    "Variant",
    "build_obc",
    "build_tc",
    "cost",
    "da_output",
    "quantize",
    "reconstruct_obc",
    "reconstruct_tc",
    "run_experiment",
    "slice_obc",
    "slice_tc",
    "to_real",
    "verify",
]
