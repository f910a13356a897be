"""Derivatives of the generating function Z(y) = (1 - 4y^2)^(-1/2).

Z is the normalization kernel of the SMSV photon-number series,

    Z(y) = sum_n binom(2n, n) y^(2n),      |y| < 1/2,

and every norm, mean and variance in the closed-form layer is a rational
combination of the derivatives Z^(k)(y1).  The table of derivatives up to a
requested order is produced by the exact three-term recurrence

    (1 - 4y^2) Z^(k+1) = 4(2k+1) y Z^(k) + 4 k^2 Z^(k-1),

seeded with Z^(0) = Z and Z^(1) = 4 y Z^3.  The recurrence is the k-fold
Leibniz derivative of the identity (1 - 4y^2) Z' = 4 y Z, and it is
cancellation-free for y in [0, 1/2): every term on the right is nonnegative.

`z_table_series` evaluates the same derivatives by term-wise differentiation
of the power series.  It is slow and exists as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import Y1_LIMIT


@dataclass(frozen=True)
class ZTable:
    """Derivatives Z^(0)(y1) .. Z^(k_max)(y1) as a dense table."""

    y1: float
    values: np.ndarray  # values[k] = d^k Z / dy^k at y1

    def __getitem__(self, k: int) -> float:
        return float(self.values[k])

    def __len__(self) -> int:
        return len(self.values)

    @property
    def k_max(self) -> int:
        return len(self.values) - 1


def _z_list(y1: float, k_max: int) -> list:
    # Pure-python recurrence; hot path of the optimizer, so no numpy here.
    u = 1.0 - 4.0 * y1 * y1
    z = u ** -0.5
    out = [z]
    if k_max >= 1:
        out.append(4.0 * y1 * z ** 3)
    for k in range(1, k_max):
        out.append((4.0 * (2 * k + 1) * y1 * out[k] + 4.0 * k * k * out[k - 1]) / u)
    return out[: k_max + 1]


def z_table(y1: float, k_max: int, limit: float = Y1_LIMIT) -> ZTable:
    """Table of derivatives of Z at y1, orders 0..k_max.

    Rejects y1 >= limit (default 0.499) to stay clear of the y = 1/2
    singularity, and negative y1 or k_max.
    """
    if not 0.0 <= y1 < limit:
        raise ValueError(f"y1 must lie in [0, {limit}), got {y1}")
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    return ZTable(y1=y1, values=np.array(_z_list(y1, k_max)))


def z_table_series(y1: float, k_max: int, tol: float = 1e-18, n_terms: int = 2000) -> ZTable:
    """Series-oracle evaluation of the same table.

    Differentiates Z = sum_n binom(2n,n) y^(2n) term by term:

        Z^(k)(y) = sum_{2n >= k} binom(2n,n) (2n)!/(2n-k)! y^(2n-k).

    Terms are accumulated in log space until they fall below tol relative to
    the partial sum.  Intended for tests only.
    """
    if not 0.0 <= y1 < 0.5:
        raise ValueError(f"y1 must lie in [0, 0.5), got {y1}")
    vals = []
    for k in range(k_max + 1):
        if y1 == 0.0:
            # Only the 2n = k term survives, and only for even k.
            if k % 2 == 0:
                n = k // 2
                vals.append(math.comb(2 * n, n) * math.factorial(k))
            else:
                vals.append(0.0)
            continue
        total = 0.0
        lny = math.log(y1)
        for n in range((k + 1) // 2, n_terms):
            ln_term = (
                math.lgamma(2 * n + 1)
                - 2.0 * math.lgamma(n + 1)
                + math.lgamma(2 * n + 1)
                - math.lgamma(2 * n - k + 1)
                + (2 * n - k) * lny
            )
            term = math.exp(ln_term)
            total += term
            if term < tol * total and n > k:
                break
        vals.append(total)
    return ZTable(y1=y1, values=np.array(vals, dtype=float))
