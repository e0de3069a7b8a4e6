"""Scenario generators and the seeded Monte Carlo rejection-rate engine."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from time import perf_counter

import numpy as np

from .nulldist import critical_value
from .rng import substream
from .series import BinarySeries
from .spectral import fisher_g_batch, num_frequencies
from .theory import PeriodicProfile

__all__ = [
    "CSV_HEADER",
    "KINDS",
    "PI_DIGITS",
    "PowerEstimate",
    "ScenarioSpec",
    "TABLE_IDS",
    "build_profile",
    "estimate_csv_row",
    "estimate_power",
    "format_table_text",
    "iter_table",
    "read_scenario",
    "run_table",
    "simulate_series",
    "table_specs",
]

# First 120 decimal digits of pi; the test suite checks this literal against
# an independently computed value.
PI_DIGITS = (
    "141592653589793238462643383279502884197169399375105820974944"
    "592307816406286208998628034825342117067982148086513282306647"
)

KINDS = ("CONSTANT", "ARITH_STEP", "ENDPOINTS", "SINE", "PI_DIGITS", "RANDOM_IID")


@dataclass(frozen=True)
class ScenarioSpec:
    """One simulation scenario: profile construction plus run parameters.

    Kind-specific fields: CONSTANT uses ``p1``; ARITH_STEP uses ``r``,
    ``step`` and ``mean`` (probabilities in arithmetic progression with the
    given mean); ENDPOINTS uses ``r``, ``p_lo``, ``p_hi`` (linear
    interpolation); SINE uses ``r`` (two full sine periods sampled on an
    inclusive equidistant grid); PI_DIGITS uses ``length`` (p_i = digit_i/10);
    RANDOM_IID redraws all n probabilities uniformly each replication.
    """

    kind: str
    n: int
    d: int
    alpha: float = 0.05
    replications: int = 20000
    seed: int = 0
    p1: float | None = None
    r: int | None = None
    step: float | None = None
    mean: float = 0.5
    p_lo: float | None = None
    p_hi: float | None = None
    length: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}")
        if self.d < 3:
            raise ValueError("d too small (q would be 0)")
        if self.n < self.d:
            raise ValueError("series shorter than d")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("invalid level")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.kind == "CONSTANT":
            if self.p1 is None or not 0.0 <= self.p1 <= 1.0:
                raise ValueError("CONSTANT needs p1 in [0,1]")
        elif self.kind == "ARITH_STEP":
            if self.r is None or self.r < 2 or self.step is None:
                raise ValueError("ARITH_STEP needs r >= 2 and step")
            if not 0.0 <= self.mean <= 1.0:
                raise ValueError("ARITH_STEP needs mean in [0,1]")
        elif self.kind == "ENDPOINTS":
            if self.r is None or self.r < 2:
                raise ValueError("ENDPOINTS needs r >= 2")
            for val in (self.p_lo, self.p_hi):
                if val is None or not 0.0 <= val <= 1.0:
                    raise ValueError("ENDPOINTS needs p_lo and p_hi in [0,1]")
        elif self.kind == "SINE":
            if self.r is None or self.r < 2:
                raise ValueError("SINE needs r >= 2")
        elif self.kind == "PI_DIGITS":
            if self.length is None or not 1 <= self.length <= len(PI_DIGITS):
                raise ValueError(f"PI_DIGITS needs length in 1..{len(PI_DIGITS)}")

    def profile_period(self) -> int:
        """Length of the repeating profile; 0 for RANDOM_IID (non-periodic)."""
        if self.kind == "CONSTANT":
            return 1
        if self.kind == "PI_DIGITS":
            return int(self.length)
        if self.kind == "RANDOM_IID":
            return 0
        return int(self.r)

    def label(self) -> str:
        """Short comma-free scenario tag used in the CSV scenario column."""
        if self.kind == "CONSTANT":
            return f"CONSTANT[p1={self.p1:g}]"
        if self.kind == "ARITH_STEP":
            return f"ARITH_STEP[r={self.r} step={self.step:g} mean={self.mean:g}]"
        if self.kind == "ENDPOINTS":
            return f"ENDPOINTS[r={self.r} p_lo={self.p_lo:g} p_hi={self.p_hi:g}]"
        if self.kind == "SINE":
            return f"SINE[r={self.r}]"
        if self.kind == "PI_DIGITS":
            return f"PI_DIGITS[length={self.length}]"
        return "RANDOM_IID"


def build_profile(spec: ScenarioSpec) -> PeriodicProfile:
    """Materialise the success-probability profile of a scenario.

    RANDOM_IID has no fixed profile (probabilities are redrawn inside each
    replication) and is rejected here.
    """
    kind = spec.kind
    if kind == "CONSTANT":
        p = np.array([spec.p1], dtype=float)
    elif kind == "ARITH_STEP":
        idx = np.arange(1, spec.r + 1, dtype=float)
        p = spec.mean + spec.step * (idx - (spec.r + 1) / 2.0)
    elif kind == "ENDPOINTS":
        p = spec.p_lo + (spec.p_hi - spec.p_lo) * np.arange(spec.r) / (spec.r - 1)
    elif kind == "SINE":
        grid = 4.0 * np.pi * np.arange(spec.r) / (spec.r - 1)
        p = 0.4 * np.sin(grid) + 0.5
    elif kind == "PI_DIGITS":
        p = np.array([int(c) for c in PI_DIGITS[: spec.length]], dtype=float) / 10.0
    else:
        raise ValueError("RANDOM_IID redraws probabilities per replication")
    if np.any(p < 0.0) or np.any(p > 1.0):
        raise ValueError("probability outside [0,1]")
    return PeriodicProfile(p)


def simulate_series(profile: PeriodicProfile, n: int, rng: np.random.Generator) -> BinarySeries:
    """Draw Y_1..Y_n with Y_l ~ Bernoulli(p_{((l-1) mod r) + 1})."""
    if n < 1:
        raise ValueError("n must be positive")
    probs = np.resize(profile.p, n)
    return BinarySeries((rng.random(n) < probs).astype(np.int8))


@dataclass(frozen=True, eq=False)
class PowerEstimate:
    """Empirical rejection rate of one scenario with its binomial error."""

    scenario: ScenarioSpec
    rejections: int
    rate: float
    std_error: float
    elapsed: float


def estimate_power(spec: ScenarioSpec, chunk: int = 1024) -> PowerEstimate:
    """Monte Carlo rejection rate of the level-alpha test under ``spec``.

    Each replication k draws its series from the independent stream keyed by
    ``(spec.seed, k)``, folds it with spec.d, and rejects when the guarded
    statistic exceeds the one-term approximate critical value (the convention
    all shipped tables use; the exact value is available separately from
    :func:`binperiod.nulldist.critical_value`). Rejection counts are
    bit-identical for any chunking or execution order.
    """
    t0 = perf_counter()
    n, d = spec.n, spec.d
    k_alpha = critical_value(num_frequencies(d), spec.alpha).approx
    blocks = n // d
    random_iid = spec.kind == "RANDOM_IID"
    probs = None if random_iid else np.resize(build_profile(spec).p, n)
    folded = np.empty((min(chunk, spec.replications), d))
    rejections = 0
    done = 0
    while done < spec.replications:
        m = min(chunk, spec.replications - done)
        for i in range(m):
            rng = substream(spec.seed, done + i)
            p = rng.random(n) if random_iid else probs
            bits = rng.random(n) < p
            folded[i] = bits[: blocks * d].reshape(blocks, d).mean(axis=0)
        values, _, _ = fisher_g_batch(folded[:m])
        rejections += int(np.count_nonzero(values > k_alpha))
        done += m
    rate = rejections / spec.replications
    std_error = math.sqrt(rate * (1.0 - rate) / spec.replications)
    return PowerEstimate(
        scenario=spec,
        rejections=rejections,
        rate=rate,
        std_error=std_error,
        elapsed=perf_counter() - t0,
    )


TABLE_IDS = ("T1", "T2", "T3", "T4", "T5", "PI")


def table_specs(table_id: str, replications: int = 20000, seed: int = 0) -> list[ScenarioSpec]:
    """Scenario list for one of the shipped tables.

    T1 sweeps the constant null p1 = 0.1..0.9; T2/T3 sweep arithmetic
    profiles with steps 0.01/0.02 and mean 0.5 over r = 2..30; T4 sweeps
    endpoint profiles 0.4/0.6 over r = 2..30; T5 sweeps the sine profile over
    r = 2..10; PI runs the pi-digit scenario at n = 120, d = 12. All cells of
    a table share the seed, so cross-table comparisons are matched.
    """
    common = dict(n=1200, d=60, alpha=0.05, replications=replications, seed=seed)
    if table_id == "T1":
        return [
            ScenarioSpec(kind="CONSTANT", p1=k / 10.0, **common) for k in range(1, 10)
        ]
    if table_id == "T2":
        return [
            ScenarioSpec(kind="ARITH_STEP", r=r, step=0.01, **common)
            for r in range(2, 31)
        ]
    if table_id == "T3":
        return [
            ScenarioSpec(kind="ARITH_STEP", r=r, step=0.02, **common)
            for r in range(2, 31)
        ]
    if table_id == "T4":
        return [
            ScenarioSpec(kind="ENDPOINTS", r=r, p_lo=0.4, p_hi=0.6, **common)
            for r in range(2, 31)
        ]
    if table_id == "T5":
        return [ScenarioSpec(kind="SINE", r=r, **common) for r in range(2, 11)]
    if table_id == "PI":
        return [
            ScenarioSpec(
                kind="PI_DIGITS",
                length=120,
                n=120,
                d=12,
                alpha=0.05,
                replications=replications,
                seed=seed,
            )
        ]
    raise ValueError(f"unknown table {table_id!r}; expected one of {TABLE_IDS}")


def iter_table(table_id: str, replications: int = 20000, seed: int = 0):
    """Yield PowerEstimates for a table cell by cell (cheap to stream)."""
    for spec in table_specs(table_id, replications, seed):
        yield estimate_power(spec)


def run_table(table_id: str, replications: int = 20000, seed: int = 0) -> list[PowerEstimate]:
    """Run every cell of a table; see :func:`table_specs`."""
    return list(iter_table(table_id, replications, seed))


CSV_HEADER = "scenario,r,n,d,alpha,replications,rejections,rate,std_error"


def estimate_csv_row(est: PowerEstimate, full_precision: bool = False) -> str:
    spec = est.scenario
    if full_precision:
        rate, se = repr(est.rate), repr(est.std_error)
    else:
        rate, se = f"{est.rate:.4f}", f"{est.std_error:.4f}"
    return (
        f"{spec.label()},{spec.profile_period()},{spec.n},{spec.d},{spec.alpha:g},"
        f"{spec.replications},{est.rejections},{rate},{se}"
    )


def format_table_text(estimates: list[PowerEstimate], full_precision: bool = False) -> str:
    lines = []
    width = max(len(e.scenario.label()) for e in estimates)
    for est in estimates:
        if full_precision:
            rate, se = repr(est.rate), repr(est.std_error)
        else:
            rate, se = f"{est.rate:.4f}", f"{est.std_error:.4f}"
        lines.append(
            f"{est.scenario.label():<{width}}  rate={rate}  se={se}"
            f"  rejections={est.rejections}/{est.scenario.replications}"
        )
    return "\n".join(lines)


_SCENARIO_INT_KEYS = ("n", "d", "replications", "seed", "r", "length")
_SCENARIO_FLOAT_KEYS = ("alpha", "p1", "step", "mean", "p_lo", "p_hi")


def read_scenario(path) -> ScenarioSpec:
    """Parse a flat key-value scenario file.

    One ``key = value`` pair per line (``:`` also accepted); ``#`` lines are
    comments. Keys: kind, n, d, alpha, replications, seed, p1, r, step, mean,
    p_lo, p_hi, length. Which of the kind-specific keys are required follows
    :class:`ScenarioSpec`.
    """
    fields: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            sep = "=" if "=" in line else ":"
            if sep not in line:
                raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
            key, _, value = line.partition(sep)
            key = key.strip().lower()
            value = value.strip()
            if key == "kind":
                fields["kind"] = value.upper()
            elif key in _SCENARIO_INT_KEYS:
                fields[key] = int(value)
            elif key in _SCENARIO_FLOAT_KEYS:
                fields[key] = float(value)
            else:
                raise ValueError(f"line {lineno}: unknown scenario key {key!r}")
    for required in ("kind", "n", "d"):
        if required not in fields:
            raise ValueError(f"scenario file is missing {required!r}")
    return ScenarioSpec(**fields)


def override_scenario(spec: ScenarioSpec, **changes) -> ScenarioSpec:
    """Replace run parameters (replications, seed, alpha, ...) on a spec."""
    changes = {k: v for k, v in changes.items() if v is not None}
    return replace(spec, **changes) if changes else spec
