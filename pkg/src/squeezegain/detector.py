"""Photon subtraction read out by an inefficient number-resolving detector.

A detector of quantum efficiency eta that reports k clicks actually heralds a
mixture over true tap photon numbers j >= k with binomial weights.  Expanded
to second order in (1 - eta), the mixture reduces to the three projective
states j = k, k+1, k+2 with weights 1, w1, w2 relative to the leading one:

    w1 = (1 - eta) B <n_k>
    w2 = ((1 - eta)^2 / 2) B^2 <n_k> <n_{k+1}>

(the binomial weight ratios collapse because (k+1) P_{k+1} / P_k = B <n_k>).
Only the ancilla=0 branch with even k is covered; odd k is rejected.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .analytic import _kern, probability, state_coefficients
from .params import StateSpec
from .ztable import _z_list

__all__ = [
    "ValidityWarning",
    "MixedStateSecondOrder",
    "second_order_weights",
    "norm_factor_eta",
    "variance_eta",
    "probability_eta",
    "mixed_state",
]


class ValidityWarning(UserWarning):
    """Emitted when the second-order expansion leaves its validity region."""


def _check_spec(spec: StateSpec, eta: float):
    if spec.ancilla != 0:
        raise ValueError("detector model covers the ancilla=0 branch only")
    if spec.k % 2 != 0:
        raise ValueError(f"detector model requires even k, got {spec.k}")
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must lie in (0, 1], got {eta}")


def second_order_weights(spec: StateSpec, eta: float) -> tuple[float, float]:
    """Relative mixture weights (w1, w2) of the j = k+1, k+2 contaminants."""
    _check_spec(spec, eta)
    k, y1, B = spec.k, spec.y1, spec.B
    z = _z_list(y1, k + 3)
    mean_k = y1 * z[k + 1] / z[k]
    mean_k1 = y1 * z[k + 2] / z[k + 1]
    mean_k2 = y1 * z[k + 3] / z[k + 2]
    if (1.0 - eta) * B * mean_k2 > 0.5:
        warnings.warn(
            "second-order detector expansion is unreliable here: "
            "(1-eta) B <n_{k+2}> exceeds 0.5",
            ValidityWarning,
            stacklevel=2,
        )
    w1 = (1.0 - eta) * B * mean_k
    w2 = 0.5 * (1.0 - eta) ** 2 * B * B * mean_k * mean_k1
    return w1, w2


@dataclass(frozen=True)
class MixedStateSecondOrder:
    """Second-order detector mixture: weights (1, w1, w2)/norm on j = k, k+1, k+2."""

    spec: StateSpec
    eta: float
    w1: float
    w2: float

    @classmethod
    def build(cls, spec: StateSpec, eta: float) -> "MixedStateSecondOrder":
        w1, w2 = second_order_weights(spec, eta)
        return cls(spec=spec, eta=eta, w1=w1, w2=w2)

    @property
    def norm(self) -> float:
        return 1.0 + self.w1 + self.w2


def norm_factor_eta(spec: StateSpec, eta: float) -> float:
    """Normalization 1 + w1 + w2 of the second-order mixture."""
    w1, w2 = second_order_weights(spec, eta)
    return 1.0 + w1 + w2


def variance_eta(spec: StateSpec, eta: float) -> float:
    """Squeezed-quadrature variance of the k-click mixture.

    At eta = 1 the weights vanish exactly and the value is bit-identical to
    `variance`.
    """
    w1, w2 = second_order_weights(spec, eta)
    k, y1 = spec.k, spec.y1
    z = _z_list(y1, k + 3)
    kerns = [_kern(j, y1, y1 * z[j + 1] / z[j]) for j in (k, k + 1, k + 2)]
    return 0.25 + (kerns[0] + w1 * kerns[1] + w2 * kerns[2]) / (1.0 + w1 + w2)


def probability_eta(spec: StateSpec, eta: float) -> float:
    """Herald probability of the k-click readout, eta^k P_k (1 + w1 + w2)."""
    w1, w2 = second_order_weights(spec, eta)
    return eta ** spec.k * probability(spec) * (1.0 + w1 + w2)


def mixed_state(spec: StateSpec, eta: float, n_max: int, tail_tol: float | None = 1e-12):
    """Density matrix of the second-order mixture on Fock levels 0..n_max."""
    import numpy as np

    from .oracle import DensityMatrix

    w1, w2 = second_order_weights(spec, eta)
    rho = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for j, w in ((spec.k, 1.0), (spec.k + 1, w1), (spec.k + 2, w2)):
        if w == 0.0:
            continue
        part = StateSpec(ancilla=0, k=j, y1=spec.y1, B=spec.B, allow_high_k=True)
        c = state_coefficients(part, n_max, tail_tol=tail_tol).coeffs
        rho += w * np.outer(c, c)
    return DensityMatrix(entries=rho / (1.0 + w1 + w2))
