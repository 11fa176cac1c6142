"""Experiment runners, config handling and result emitters."""
from .config import ConfigError, ExperimentConfig, SolverSettings, load_config
from .properties import PropertyReport, run_properties
from .runners import (
    ResultTable,
    run_fig1,
    run_fig3,
    run_long_range,
    run_sweep,
    run_table1,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "PropertyReport",
    "ResultTable",
    "SolverSettings",
    "load_config",
    "run_fig1",
    "run_fig3",
    "run_long_range",
    "run_properties",
    "run_sweep",
    "run_table1",
]
