"""Asymptotics of folded block means under a periodic success profile.

For success probabilities with period r and fold length d, each block mean
converges to the coset average

    e_i = (1/r) sum_{k=0..r-1} p_{i+kd}        (r-periodic indexing),

and the rescaled fluctuations have variance limits

    v_i = (1/r) sum_{k=0..r-1} p_{i+kd} (1 - p_{i+kd}).

The limit vector e is b-periodic with b = gcd(r, d) and constant whenever
b = 1. Whether e lies in the vanishing set A decides the large-sample
behaviour of the test statistic, which this module classifies.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .spectral import fisher_g, in_set_A

__all__ = [
    "AsymptoticSummary",
    "PeriodicProfile",
    "PowerRegime",
    "detectability",
    "effective_period",
    "limits_e",
    "limits_v",
    "predict_power_regime",
]


def effective_period(p) -> int:
    """Smallest s dividing len(p) such that p is exactly s-periodic."""
    arr = np.asarray(p)
    r = arr.size
    for s in range(1, r):
        if r % s == 0 and all(arr[i] == arr[i % s] for i in range(r)):
            return s
    return r


@dataclass(frozen=True, eq=False)
class PeriodicProfile:
    """Success probabilities p_1..p_r, repeated with declared period r.

    Minimality of r is not enforced; a proper sub-period only triggers a
    warning, as do boundary probabilities 0 and 1 (legal in simulation, but
    their variance contribution vanishes).
    """

    p: np.ndarray

    def __post_init__(self):
        arr = np.array(self.p, dtype=float, copy=True)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("profile must be a non-empty vector")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("probability outside [0,1]")
        arr.flags.writeable = False
        object.__setattr__(self, "p", arr)
        if np.any((arr == 0.0) | (arr == 1.0)):
            warnings.warn(
                "profile touches 0 or 1; those positions contribute no variance",
                stacklevel=2,
            )
        s = effective_period(arr)
        if s < arr.size:
            warnings.warn(
                f"declared period {arr.size} is not minimal"
                f" (effective period {s})",
                stacklevel=2,
            )

    @property
    def r(self) -> int:
        return int(self.p.size)


def _check_d(d: int) -> None:
    if d < 3:
        raise ValueError("d too small (q would be 0)")


def _coset_mean(values: np.ndarray, r: int, d: int, i: int) -> float:
    # fsum is exactly rounded, so permuting the coset never changes the result;
    # the b-periodicity and gcd(r,d)=1 identities hold to the last bit.
    return math.fsum(values[(i + k * d - 1) % r] for k in range(r)) / r


def limits_e(profile: PeriodicProfile, d: int) -> np.ndarray:
    """In-probability limits e_1..e_d of the folded block means."""
    _check_d(d)
    p = profile.p
    r = profile.r
    return np.array([_coset_mean(p, r, d, i) for i in range(1, d + 1)])


def limits_v(profile: PeriodicProfile, d: int) -> np.ndarray:
    """Variance limits v_1..v_d of the rescaled block means."""
    _check_d(d)
    var = profile.p * (1.0 - profile.p)
    r = profile.r
    return np.array([_coset_mean(var, r, d, i) for i in range(1, d + 1)])


class PowerRegime(Enum):
    """Large-sample behaviour of the test under a given profile and d."""

    NULL_LIKE = "NULL_LIKE"
    R2_LIMIT = "R2_LIMIT"
    CONSISTENT = "CONSISTENT"


@dataclass(frozen=True, eq=False)
class AsymptoticSummary:
    """Limits and detectability diagnostics for one (profile, d) pair.

    ``detect_sum`` is the complex sufficiency certificate
    sum_{k=1..r} e_k exp(-2 pi i k / b) (floor((d-k)/r) + 1); when its modulus
    exceeds ``detect_tol`` (``detect_nonzero``), e is guaranteed to lie
    outside A and the statistic converges to ``limit_g``. A modulus within
    tolerance of zero is inconclusive, and classification falls back to the
    direct membership test ``e_in_A``.
    """

    e: np.ndarray
    v: np.ndarray
    b: int
    e_in_A: bool
    detect_sum: complex
    detect_tol: float
    detect_nonzero: bool
    limit_g: float | None

    def __post_init__(self):
        for name in ("e", "v"):
            arr = np.array(getattr(self, name), dtype=float, copy=True)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)


def detectability(profile: PeriodicProfile, d: int) -> AsymptoticSummary:
    """Compute e, v, gcd structure, A-membership, and the limit statistic."""
    _check_d(d)
    p = profile.p
    r = profile.r
    b = math.gcd(r, d)
    e = limits_e(profile, d)
    v = limits_v(profile, d)
    e_in = in_set_A(e)

    # e at positions 1..r straight from the defining sum (equal to e[:r]
    # whenever r <= d, but also well defined for r > d).
    e_head = [_coset_mean(p, r, d, k) for k in range(1, r + 1)]
    terms = [
        e_head[k - 1] * cmath.exp(-2j * cmath.pi * k / b) * ((d - k) // r + 1)
        for k in range(1, r + 1)
    ]
    detect_sum = complex(
        math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms)
    )
    detect_tol = 1e-10 * math.fsum(abs(x) for x in e_head) * (d // r + 1)
    detect_nonzero = abs(detect_sum) > detect_tol

    if r >= 3 and b > 1 and r <= d and detect_nonzero and e_in:
        raise RuntimeError(
            "inconsistent classification: detection sum is nonzero but the"
            " limit vector tested as degenerate"
        )

    limit_g = None if e_in else float(fisher_g(e).value)
    return AsymptoticSummary(
        e=e,
        v=v,
        b=b,
        e_in_A=e_in,
        detect_sum=detect_sum,
        detect_tol=detect_tol,
        detect_nonzero=detect_nonzero,
        limit_g=limit_g,
    )


def predict_power_regime(profile: PeriodicProfile, d: int) -> PowerRegime:
    """Classify the limit: e outside A (CONSISTENT: the statistic converges
    to limit_g), or e in A with constant variance limits (NULL_LIKE: same
    limit law as under a constant profile), or e in A with non-constant v
    (R2_LIMIT: a weighted-normal limit law without a known closed form)."""
    summary = detectability(profile, d)
    if not summary.e_in_A:
        return PowerRegime.CONSISTENT
    spread = float(summary.v.max() - summary.v.min())
    if spread <= 1e-12 * max(1.0, float(summary.v.max())):
        return PowerRegime.NULL_LIKE
    return PowerRegime.R2_LIMIT
