"""Gain optimization over the beam-splitter parameter and squeezing sweeps.

The figure of merit is the squeezing gain 10 lg(var_in / var_out) in dB.  For
fixed (S, k) the variance is minimized over B on a deterministic grid (log
spaced below B = 1, linear above, 400 points total) followed by golden-section
refinement of the best local minima; results are bitwise reproducible.

`PUBLISHED_B_FLOOR` is the B of a t = 0.99 tap.  Below the reflective-branch
transition the variance decreases monotonically as B -> 0, so tabulated
operating points pin this floor rather than an interior optimum; the
table-and-figure reproduction paths (`max_gain`, `gain_width`, the CLI sweep)
default to it, while `minimize_over_B` itself defaults to the wider range
(1e-4, 4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import gain_db, mean_photon, probability, variance
from .detector import probability_eta, variance_eta
from .params import SqueezeParams, StateSpec, smsv_variance

__all__ = [
    "PUBLISHED_B_FLOOR",
    "DEFAULT_B_RANGE",
    "OptimizationResult",
    "SweepRow",
    "BrightnessRow",
    "golden_section",
    "minimize_over_B",
    "gain_curve",
    "max_gain",
    "gain_width",
    "brightness_curve",
]

# B of a highly transmitting t = 0.99 tap: (1 - t^2)/t^2 = 199/9801.
PUBLISHED_B_FLOOR = (1.0 - 0.99 ** 2) / 0.99 ** 2

DEFAULT_B_RANGE = (1e-4, 4.0)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptimizationResult:
    S_dB: float
    k: int
    ancilla: int
    eta: float
    B_opt: float
    var_min: float
    gain_dB: float
    prob: float


@dataclass(frozen=True)
class SweepRow:
    S_dB: float
    B_opt: float
    var_min: float
    gain_dB: float
    prob: float
    mean_n: float


@dataclass(frozen=True)
class BrightnessRow:
    S_dB: float
    B_opt: float
    mean_ratio: float


def golden_section(f, a: float, b: float, tol: float = 1e-7):
    """Minimize f on [a, b]; returns (x, f(x)) once the bracket is below tol."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = (a + b) / 2.0
    return x, f(x)


def _b_grid(lo: float, hi: float) -> np.ndarray:
    # 400 points: log spaced below B = 1, linear above.
    if hi <= 1.0:
        return np.geomspace(lo, hi, 400)
    if lo >= 1.0:
        return np.linspace(lo, hi, 400)
    return np.concatenate(
        [np.geomspace(lo, 1.0, 200, endpoint=False), np.linspace(1.0, hi, 200)]
    )


def _variance_at(y: float, k: int, ancilla: int, eta: float, B: float) -> float:
    spec = StateSpec(ancilla=ancilla, k=k, y1=y / (1.0 + B), B=B)
    if eta == 1.0:
        return variance(spec)
    return variance_eta(spec, eta)


def minimize_over_B(
    S_dB: float | SqueezeParams,
    k: int,
    ancilla: int = 0,
    eta: float = 1.0,
    b_range: tuple = DEFAULT_B_RANGE,
) -> OptimizationResult:
    """Minimize the output variance over B at fixed squeezing.

    Grid scan, then golden-section refinement of the three best local minima
    (endpoints count); ties resolve to the smaller B.  Deterministic: equal
    inputs give bit-identical results.
    """
    squeeze = S_dB if isinstance(S_dB, SqueezeParams) else SqueezeParams.from_db(S_dB)
    lo, hi = b_range
    if not 0.0 < lo < hi:
        raise ValueError(f"b_range must satisfy 0 < lo < hi, got {b_range}")
    if ancilla == 1 and eta != 1.0:
        raise ValueError("eta < 1 is modeled for the ancilla=0 branch only")
    y = squeeze.y

    def f(B: float) -> float:
        return _variance_at(y, k, ancilla, eta, B)

    grid = _b_grid(lo, hi)
    vals = [f(float(B)) for B in grid]
    n = len(grid)
    candidates = []
    for i in range(n):
        left = vals[i - 1] if i > 0 else math.inf
        right = vals[i + 1] if i < n - 1 else math.inf
        if vals[i] <= left and vals[i] <= right:
            candidates.append((vals[i], float(grid[i]), max(i - 1, 0), min(i + 1, n - 1)))
    candidates.sort(key=lambda c: (c[0], c[1]))
    refined = []
    for val, b, ilo, ihi in candidates[:3]:
        x, fx = golden_section(f, float(grid[ilo]), float(grid[ihi]), tol=1e-7)
        if fx <= val:
            refined.append((fx, x))
        else:
            refined.append((val, b))
    refined.sort(key=lambda c: (c[0], c[1]))
    var_min, B_opt = refined[0]

    spec = StateSpec(ancilla=ancilla, k=k, y1=y / (1.0 + B_opt), B=B_opt)
    prob = probability(spec) if eta == 1.0 else probability_eta(spec, eta)
    return OptimizationResult(
        S_dB=squeeze.S_dB,
        k=k,
        ancilla=ancilla,
        eta=eta,
        B_opt=B_opt,
        var_min=var_min,
        gain_dB=gain_db(var_min, smsv_variance(squeeze)),
        prob=prob,
    )


def gain_curve(
    s_grid,
    k: int,
    ancilla: int = 0,
    eta: float = 1.0,
    b_range: tuple = DEFAULT_B_RANGE,
) -> list:
    """One optimized SweepRow per squeezing value, in grid order."""
    rows = []
    for S in s_grid:
        squeeze = S if isinstance(S, SqueezeParams) else SqueezeParams.from_db(S)
        res = minimize_over_B(squeeze, k, ancilla=ancilla, eta=eta, b_range=b_range)
        spec = StateSpec(ancilla=ancilla, k=k, y1=squeeze.y / (1.0 + res.B_opt), B=res.B_opt)
        rows.append(
            SweepRow(
                S_dB=res.S_dB,
                B_opt=res.B_opt,
                var_min=res.var_min,
                gain_dB=res.gain_dB,
                prob=res.prob,
                mean_n=mean_photon(spec),
            )
        )
    return rows


def max_gain(
    k: int,
    ancilla: int = 0,
    eta: float = 1.0,
    b_range: tuple = (PUBLISHED_B_FLOOR, 4.0),
    s_range: tuple = (0.05, 6.0),
    s_tol: float = 1e-3,
) -> OptimizationResult:
    """Best gain over squeezing: coarse 0.05 dB scan, then golden refinement to s_tol."""
    lo, hi = s_range
    if not 0.0 < lo < hi:
        raise ValueError(f"s_range must satisfy 0 < lo < hi, got {s_range}")
    count = int(round((hi - lo) / 0.05)) + 1
    s_grid = np.linspace(lo, hi, count)

    def neg_gain(S: float) -> float:
        return -minimize_over_B(float(S), k, ancilla=ancilla, eta=eta, b_range=b_range).gain_dB

    vals = [neg_gain(S) for S in s_grid]
    i = int(np.argmin(vals))
    a = float(s_grid[max(i - 1, 0)])
    b = float(s_grid[min(i + 1, len(s_grid) - 1)])
    s_best, _ = golden_section(neg_gain, a, b, tol=s_tol)
    return minimize_over_B(s_best, k, ancilla=ancilla, eta=eta, b_range=b_range)


def gain_width(
    k: int,
    ancilla: int = 0,
    eta: float = 1.0,
    b_range: tuple = (PUBLISHED_B_FLOOR, 4.0),
    s_max: float = 20.0,
) -> float | None:
    """Upper edge of the positive-gain squeezing interval, to 0.01 dB.

    The optimized gain is positive on an interval reaching down to S -> 0;
    the returned value is the upper zero crossing.  Returns None when the
    gain is nowhere positive on (0, s_max].
    """

    def g(S: float) -> float:
        return minimize_over_B(S, k, ancilla=ancilla, eta=eta, b_range=b_range).gain_dB

    step = 0.25
    s_prev = None
    s_pos = None
    S = step
    while S <= s_max + 1e-9:
        if g(S) > 0.0:
            s_pos = S
        elif s_pos is not None:
            s_prev = S
            break
        S += step
    if s_pos is None:
        return None
    if s_prev is None:
        raise ValueError(f"gain still positive at s_max={s_max}; enlarge the scan")
    lo, hi = s_pos, s_prev
    while hi - lo > 0.01:
        mid = (lo + hi) / 2.0
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def brightness_curve(
    s_grid,
    k: int,
    ancilla: int = 1,
    b_range: tuple = DEFAULT_B_RANGE,
) -> list:
    """Mean-photon-number ratio of the heralded state to the input SMSV.

    B is taken at the gain optimum for each squeezing value.
    """
    rows = []
    for S in s_grid:
        squeeze = SqueezeParams.from_db(S)
        if squeeze.mean_n <= 0.0:
            raise ValueError("brightness ratio needs S > 0")
        res = minimize_over_B(squeeze, k, ancilla=ancilla, b_range=b_range)
        spec = StateSpec(ancilla=ancilla, k=k, y1=squeeze.y / (1.0 + res.B_opt), B=res.B_opt)
        rows.append(
            BrightnessRow(
                S_dB=squeeze.S_dB,
                B_opt=res.B_opt,
                mean_ratio=mean_photon(spec) / squeeze.mean_n,
            )
        )
    return rows
