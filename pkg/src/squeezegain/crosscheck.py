"""Grid comparison between the closed-form layer and the Fock oracle.

The oracle lives on Fock levels 0..n_max and a k-photon herald can populate
transmitted levels up to n_max - k only, so a heralded state whose exact
expansion carries mass beyond that edge cannot match the closed forms to
machine accuracy no matter how both sides are computed.  Each grid cell is
therefore classified by its exact closed-form tail mass beyond the oracle
edge:

* tail < tail_tol: raw comparison of oracle observables against the exact
  closed-form values;
* otherwise: comparison on the common truncated support (both sides
  renormalized there), plus the bookkeeping identity that the relative
  probability deficit of the oracle equals the tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import mean_photon, probability, state_coefficients, variance
from .oracle import (
    FockVector,
    TruncationConfig,
    fidelity,
    herald_project,
    observables,
    smsv_vector,
)
from .params import BeamSplitterParams, SqueezeParams, StateSpec

__all__ = [
    "DEFAULT_K_VALUES",
    "DEFAULT_S_VALUES",
    "DEFAULT_B_VALUES",
    "Tolerances",
    "CellComparison",
    "compare_cell",
    "run_grid",
]

DEFAULT_K_VALUES = (0, 1, 2, 3, 4, 5, 6)
DEFAULT_S_VALUES = (0.5, 1.0, 2.0, 4.0, 8.0)
DEFAULT_B_VALUES = (0.02, 0.1, 0.5, 1.5)


@dataclass(frozen=True)
class Tolerances:
    mean: float = 1e-8
    var: float = 1e-8
    prob_rel: float = 1e-10
    fid_deficit: float = 1e-10
    # |prob deficit - tail| for tail-limited cells, relative to the tail.
    attribution_rel: float = 0.02


@dataclass(frozen=True)
class CellComparison:
    ancilla: int
    k: int
    S_dB: float
    B: float
    tail: float
    raw: bool
    d_mean: float
    d_var: float
    d_prob_rel: float
    fid_deficit: float
    prob_attribution: float

    def ok(self, tol: Tolerances = Tolerances()) -> bool:
        if self.d_mean > tol.mean or self.d_var > tol.var:
            return False
        if self.fid_deficit > tol.fid_deficit:
            return False
        if self.raw:
            return self.d_prob_rel <= tol.prob_rel
        return self.prob_attribution <= tol.attribution_rel * self.tail + 1e-12


def compare_cell(
    ancilla: int,
    k: int,
    S_dB: float,
    B: float,
    n_max: int = 80,
    tail_tol: float = 1e-12,
) -> CellComparison:
    """Compare one (ancilla, k, S, B) cell; see the module docstring."""
    squeeze = SqueezeParams.from_db(S_dB)
    spec = StateSpec(ancilla=ancilla, k=k, y1=squeeze.y / (1.0 + B), B=B)
    bs = BeamSplitterParams.from_b(B)

    p_cf = probability(spec)
    if p_cf <= 0.0:
        raise ValueError(f"cell has zero herald probability: {spec}")
    fc = state_coefficients(spec, n_max, tail_tol=None)

    sv = smsv_vector(squeeze, TruncationConfig(n_max=n_max, tail_tol=tail_tol))
    state, p_oracle = herald_project(sv, ancilla, bs, k)
    obs = observables(state)

    # The herald can reach transmitted levels up to n_max - k only.
    edge = n_max - k
    head = fc.coeffs[: edge + 1]
    head_mass = float(np.dot(head, head))
    tail = max(0.0, 1.0 - head_mass)
    d_prob_rel = abs(p_oracle / p_cf - 1.0)

    ref = np.zeros(n_max + 1, dtype=complex)
    ref[: edge + 1] = head / math.sqrt(head_mass)
    ref_state = FockVector(amplitudes=ref, tail=tail)
    fid_deficit = max(0.0, 1.0 - fidelity(state, ref_state))

    if tail < tail_tol:
        d_mean = abs(obs.mean_n - mean_photon(spec))
        d_var = abs(obs.x2_var - variance(spec))
        attribution = 0.0
        raw = True
    else:
        obs_ref = observables(ref_state)
        d_mean = abs(obs.mean_n - obs_ref.mean_n)
        d_var = abs(obs.x2_var - obs_ref.x2_var)
        attribution = abs(d_prob_rel - tail)
        raw = False

    return CellComparison(
        ancilla=ancilla,
        k=k,
        S_dB=S_dB,
        B=B,
        tail=tail,
        raw=raw,
        d_mean=d_mean,
        d_var=d_var,
        d_prob_rel=d_prob_rel,
        fid_deficit=fid_deficit,
        prob_attribution=attribution,
    )


def run_grid(
    ks=DEFAULT_K_VALUES,
    ancillas=(0, 1),
    s_values=DEFAULT_S_VALUES,
    b_values=DEFAULT_B_VALUES,
    n_max: int = 80,
    tail_tol: float = 1e-12,
) -> list:
    """All cells of the cross-check grid, in deterministic order."""
    cells = []
    for ancilla in ancillas:
        for k in ks:
            for S in s_values:
                for B in b_values:
                    cells.append(compare_cell(ancilla, k, S, B, n_max=n_max, tail_tol=tail_tol))
    return cells
