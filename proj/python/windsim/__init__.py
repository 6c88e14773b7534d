"""Wind power simulation and validation engine (C++ core)."""

from ._core import (
    ConfigError,
    CorrectionFactor,
    DataError,
    NotchInterval,
    PowerCurve,
    ShearExponent,
    apply_correction,
    build_power_curve,
    capacity_check,
    clean,
    correction_factor,
    effective_speed,
    extrapolate_to_hub,
    hellmann_exponent,
    mask_constant_runs,
    mask_zero_runs,
    mbe,
    medians_differ,
    nearest_cell,
    notch_interval,
    pearson,
    power_output,
    report,
    rmse,
    simulate,
    specific_power,
    validate,
)

__all__ = [
    "ConfigError",
    "CorrectionFactor",
    "DataError",
    "NotchInterval",
    "PowerCurve",
    "ShearExponent",
    "apply_correction",
    "build_power_curve",
    "capacity_check",
    "clean",
    "correction_factor",
    "effective_speed",
    "extrapolate_to_hub",
    "hellmann_exponent",
    "mask_constant_runs",
    "mask_zero_runs",
    "mbe",
    "medians_differ",
    "nearest_cell",
    "notch_interval",
    "pearson",
    "power_output",
    "report",
    "rmse",
    "simulate",
    "specific_power",
    "validate",
]
