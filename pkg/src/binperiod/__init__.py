"""Periodicity testing for binary time series via folded block means.

Fold n observations into d block means, form the max-over-sum ratio of their
periodogram, and decide against the exact closed-form null law. Includes the
limit theory for periodic success profiles and a seeded Monte Carlo engine
for level and power tables.
"""

from .cli import TestReport, run_test
from .nulldist import (
    CriticalValue,
    critical_value,
    p_value,
    sample_limit_statistic,
    tail,
    tail_approx,
)
from .rng import substream
from .series import BinarySeries, FoldedSeries, fold, read_series, validate, write_series
from .simulate import (
    PI_DIGITS,
    PowerEstimate,
    ScenarioSpec,
    build_profile,
    estimate_power,
    read_scenario,
    run_table,
    simulate_series,
    table_specs,
)
from .spectral import (
    GStatistic,
    PeriodogramSet,
    fisher_g,
    fisher_g_batch,
    in_set_A,
    num_frequencies,
    periodogram,
)
from .theory import (
    AsymptoticSummary,
    PeriodicProfile,
    PowerRegime,
    detectability,
    effective_period,
    limits_e,
    limits_v,
    predict_power_regime,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticSummary",
    "BinarySeries",
    "CriticalValue",
    "FoldedSeries",
    "GStatistic",
    "PI_DIGITS",
    "PeriodicProfile",
    "PeriodogramSet",
    "PowerEstimate",
    "PowerRegime",
    "ScenarioSpec",
    "TestReport",
    "build_profile",
    "critical_value",
    "detectability",
    "effective_period",
    "estimate_power",
    "fisher_g",
    "fisher_g_batch",
    "fold",
    "in_set_A",
    "limits_e",
    "limits_v",
    "num_frequencies",
    "p_value",
    "periodogram",
    "predict_power_regime",
    "read_scenario",
    "read_series",
    "run_table",
    "run_test",
    "sample_limit_statistic",
    "simulate_series",
    "substream",
    "table_specs",
    "tail",
    "tail_approx",
    "validate",
    "write_series",
]
