"""Multimodal terrain sensing for skid-steer field robots.

Thin Python facade over the C++ core: colour/geometric/contact feature
extraction, a one-vs-one SVM ensemble, terrain mapping, and a synthetic
sensor-log simulator.
"""

from ._terrasense import (
    InvalidArgument,
    VehicleParams,
    classify_map,
    color_features,
    evaluate_model,
    excitation_frequency,
    extract_features,
    geometric_features,
    motion_resistance,
    rgb_to_c1c2c3,
    simulate_log,
    slip,
    train_model,
    transfer_magnitude,
    wheel_loads,
)

__all__ = [
    "InvalidArgument",
    "VehicleParams",
    "classify_map",
    "color_features",
    "evaluate_model",
    "excitation_frequency",
    "extract_features",
    "geometric_features",
    "motion_resistance",
    "rgb_to_c1c2c3",
    "simulate_log",
    "slip",
    "train_model",
    "transfer_magnitude",
    "wheel_loads",
]

__version__ = "0.1.0"
