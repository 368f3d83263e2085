# SPDX-License-Identifier: Apache-2.0
"""Random strings moving through Poisson trap fields."""

from ._core import (
    ConfigError,
    CoverageError,
    ModelParams,
    PotentialKind,
    ResolutionError,
    SurvivalEstimate,
    annealed_survival,
    box_counting_slope,
    clearing_bound,
    exponent_fit,
    run_config,
    sausage_volume,
    scaling_transform,
    simulate,
    unit_length_image,
    variance_series,
)

__all__ = [
    "ConfigError",
    "CoverageError",
    "ModelParams",
    "PotentialKind",
    "ResolutionError",
    "SurvivalEstimate",
    "annealed_survival",
    "box_counting_slope",
    "clearing_bound",
    "exponent_fit",
    "run_config",
    "sausage_volume",
    "scaling_transform",
    "simulate",
    "unit_length_image",
    "variance_series",
]
