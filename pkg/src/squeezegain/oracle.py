"""Independent truncated-Fock-space oracle.

Everything in `analytic` is closed-form; this module rebuilds the same physics
numerically on a truncated Fock space so the two can be cross-checked.  The
beam splitter acts block-diagonally on sectors of fixed total photon number N.
Within sector N the unitary matrix

    U_N[j, m] = <N-j, j| U |N-m, m>      (j, m = mode-2 photon count)

is built by cross-sector recurrences obtained from |N, 0> = a1^dag/sqrt(N)
|N-1, 0> and |N-m, m> = a2^dag/sqrt(m) |N-m, m-1| together with the
Heisenberg transforms U a1^dag U^dag = t a1^dag - r a2^dag and
U a2^dag U^dag = r a1^dag + t a2^dag:

    U_N[j, 0] = (t sqrt(N-j) U_{N-1}[j, 0] - r sqrt(j) U_{N-1}[j-1, 0]) / sqrt(N)
    U_N[j, m] = (r sqrt(N-j) U_{N-1}[j, m-1] + t sqrt(j) U_{N-1}[j-1, m-1]) / sqrt(m)

These recurrences never subtract same-sign quantities of comparable size in
column 0 (the column heralding consumes), so the tiny cross amplitudes keep
full relative accuracy; orthonormality holds to ~5e-13 at N = 80.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .params import BeamSplitterParams, SqueezeParams, TruncationError

__all__ = [
    "TruncationConfig",
    "FockVector",
    "TwoModeVector",
    "DensityMatrix",
    "Observables",
    "smsv_vector",
    "two_mode_product",
    "beam_split",
    "herald_project",
    "herald_povm",
    "observables",
    "fidelity",
]

_NORM_SLACK = 1e-12


@dataclass(frozen=True)
class TruncationConfig:
    n_max: int = 80
    tail_tol: float = 1e-12

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError(f"n_max must be >= 0, got {self.n_max}")


@dataclass(frozen=True)
class FockVector:
    """Single-mode state on Fock levels 0..n_max with an estimated tail mass.

    tail is the mass believed to live beyond the truncation; it is exact for
    states with a known closed-form norm (smsv_vector) and a geometric edge
    extrapolation for heralded states.
    """

    amplitudes: np.ndarray
    tail: float = 0.0

    def __post_init__(self):
        norm = float(np.linalg.norm(self.amplitudes))
        if norm > 1.0 + _NORM_SLACK:
            raise ValueError(f"FockVector norm {norm} exceeds 1 + {_NORM_SLACK}")

    @property
    def n_max(self) -> int:
        return len(self.amplitudes) - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class TwoModeVector:
    """Two-mode state stored per total-photon-number sector.

    sectors[N][j] is the amplitude of |N-j, j>; only sectors with support are
    stored, and N never exceeds n_max.
    """

    sectors: dict = field(default_factory=dict)
    n_max: int = 0

    def amplitude(self, n1: int, n2: int) -> complex:
        sec = self.sectors.get(n1 + n2)
        if sec is None:
            return 0.0j
        return complex(sec[n2])

    def norm(self) -> float:
        return math.sqrt(sum(float(np.sum(np.abs(v) ** 2)) for v in self.sectors.values()))


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray

    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))

    def check(self, herm_tol: float = 1e-12, trace_tol: float = 1e-12, psd_tol: float = 1e-10):
        """Validate hermiticity, unit trace and positivity; raises ValueError."""
        m = self.entries
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > herm_tol:
            raise ValueError(f"density matrix not hermitian: residual {herm:.3e}")
        tr = self.trace()
        if abs(tr - 1.0) > trace_tol:
            raise ValueError(f"density matrix trace {tr} differs from 1")
        eig_min = float(np.min(np.linalg.eigvalsh((m + m.conj().T) / 2.0)))
        if eig_min < -psd_tol:
            raise ValueError(f"density matrix has negative eigenvalue {eig_min:.3e}")


@dataclass(frozen=True)
class Observables:
    mean_n: float
    x1_var: float
    x2_var: float
    distribution: np.ndarray


def smsv_vector(squeeze: SqueezeParams, cfg: TruncationConfig = TruncationConfig()) -> FockVector:
    """Truncated SMSV state; amplitudes y^n sqrt((2n)!)/n! / sqrt(cosh s).

    The tail mass is exact because the full norm is known in closed form.
    Raises TruncationError when the tail exceeds cfg.tail_tol.
    """
    y, s = squeeze.y, squeeze.s
    amp = np.zeros(cfg.n_max + 1, dtype=complex)
    ln_cosh = math.log(math.cosh(s))
    lny = math.log(y) if y > 0.0 else None
    for n in range(cfg.n_max // 2 + 1):
        if y == 0.0 and n > 0:
            break
        ln = (n * lny if n else 0.0) + 0.5 * math.lgamma(2 * n + 1) - math.lgamma(n + 1)
        amp[2 * n] = math.exp(ln - 0.5 * ln_cosh)
    head = float(np.sum(np.abs(amp) ** 2))
    tail = max(0.0, 1.0 - head)
    if tail > cfg.tail_tol:
        raise TruncationError(
            f"SMSV tail {tail:.3e} exceeds {cfg.tail_tol:.1e} at n_max={cfg.n_max}", tail=tail
        )
    return FockVector(amplitudes=amp, tail=tail)


@lru_cache(maxsize=8)
def _sector_matrices(t: float, n_max: int):
    """Beam-splitter blocks U_0..U_{n_max} for transmittance t (real, cached)."""
    r = math.sqrt(max(0.0, 1.0 - t * t))
    mats = [np.ones((1, 1))]
    for n in range(1, n_max + 1):
        prev = mats[n - 1]
        cur = np.zeros((n + 1, n + 1))
        j = np.arange(n + 1, dtype=float)
        up = np.sqrt(n - j[:-1])  # weight of a1^dag on row j
        dn = np.sqrt(j[1:])       # weight of a2^dag shifting row j-1 -> j
        cur[:-1, 0] += t * up * prev[:, 0]
        cur[1:, 0] -= r * dn * prev[:, 0]
        cur[:, 0] /= math.sqrt(n)
        for m in range(1, n + 1):
            cur[:-1, m] += r * up * prev[:, m - 1]
            cur[1:, m] += t * dn * prev[:, m - 1]
            cur[:, m] /= math.sqrt(m)
        mats.append(cur)
    return tuple(mats)


def two_mode_product(mode1: FockVector, ancilla_n: int, n_max: int | None = None) -> TwoModeVector:
    """Product state |mode1> x |ancilla_n>, dropping components above n_max total."""
    if ancilla_n < 0:
        raise ValueError(f"ancilla_n must be >= 0, got {ancilla_n}")
    if n_max is None:
        n_max = mode1.n_max
    sectors = {}
    for n, a in enumerate(mode1.amplitudes):
        if a == 0.0:
            continue
        total = n + ancilla_n
        if total > n_max:
            continue  # dropped mass shows up in the herald tail estimate
        vec = np.zeros(total + 1, dtype=complex)
        vec[ancilla_n] = a
        sectors[total] = vec
    return TwoModeVector(sectors=sectors, n_max=n_max)


def beam_split(state: TwoModeVector, bs: BeamSplitterParams) -> TwoModeVector:
    """Apply the beam splitter sector by sector."""
    mats = _sector_matrices(bs.t, state.n_max)
    out = {n: mats[n] @ vec for n, vec in state.sectors.items()}
    return TwoModeVector(sectors=out, n_max=state.n_max)


def _tail_estimate(weights: np.ndarray) -> float:
    """Geometric extrapolation of the mass beyond the last two occupied levels."""
    idx = np.flatnonzero(weights > 0.0)
    if len(idx) < 2:
        return 0.0
    w_edge, w_prev = weights[idx[-1]], weights[idx[-2]]
    ratio = w_edge / w_prev
    if ratio >= 0.999:
        return float("inf")
    return float(w_edge * ratio / (1.0 - ratio))


def _canonical_sign(amp: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(np.abs(amp) > 0.0)
    if len(idx) == 0:
        return amp
    lead = amp[idx[0]]
    phase = lead / abs(lead)
    return amp * np.conj(phase)


def herald_project(
    state_in: FockVector,
    ancilla: int,
    bs: BeamSplitterParams,
    k: int,
    cfg: TruncationConfig | None = None,
) -> tuple[FockVector, float]:
    """Condition the transmitted mode on detecting exactly k tap photons.

    Returns the normalized conditional state (lowest occupied amplitude made
    positive) and the herald probability.  A zero-probability outcome returns
    the zero vector and probability 0.0 rather than NaNs.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    n_max = state_in.n_max if cfg is None else cfg.n_max
    joint = beam_split(two_mode_product(state_in, ancilla, n_max), bs)
    psi = np.zeros(n_max + 1, dtype=complex)
    for total, vec in joint.sectors.items():
        if total >= k:
            psi[total - k] = vec[k]
    prob = float(np.sum(np.abs(psi) ** 2))
    if prob == 0.0:
        return FockVector(amplitudes=psi, tail=0.0), 0.0
    psi = _canonical_sign(psi / math.sqrt(prob))
    tail = _tail_estimate(np.abs(psi) ** 2)
    return FockVector(amplitudes=psi, tail=tail), prob


def herald_povm(
    state_in: FockVector,
    ancilla: int,
    bs: BeamSplitterParams,
    k: int,
    eta: float,
    cfg: TruncationConfig | None = None,
) -> tuple[DensityMatrix, float]:
    """Condition on a k-click readout of an efficiency-eta number detector.

    The POVM element Pi_k = sum_{n>=k} binom(n,k) eta^k (1-eta)^(n-k) |n><n|
    is diagonal in tap photon number, so the conditional state is the mixture
    of the pure k' = k..n_max projective outcomes with binomial weights.
    At eta = 1 the result is exactly the rank-1 projective case.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must lie in (0, 1], got {eta}")
    n_max = state_in.n_max if cfg is None else cfg.n_max
    joint = beam_split(two_mode_product(state_in, ancilla, n_max), bs)
    rho = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    prob = 0.0
    for j in range(k, n_max + 1):
        weight = math.comb(j, k) * eta ** k * (1.0 - eta) ** (j - k)
        if weight == 0.0:
            continue
        psi = np.zeros(n_max + 1, dtype=complex)
        for total, vec in joint.sectors.items():
            if total >= j:
                psi[total - j] = vec[j]
        w = weight * float(np.sum(np.abs(psi) ** 2))
        if w == 0.0:
            continue
        rho += weight * np.outer(psi, psi.conj())
        prob += w
    if prob == 0.0:
        return DensityMatrix(entries=rho), 0.0
    return DensityMatrix(entries=rho / prob), prob


def observables(state: FockVector | DensityMatrix) -> Observables:
    """Photon statistics and quadrature second moments.

    x2_var is <X2^2> with X2 = (a - a^dag)/(2i); heralded states have
    <X2> = 0 by parity, so this is the squeezed-quadrature variance.
    """
    if isinstance(state, FockVector):
        amp = state.amplitudes
        dist = np.abs(amp) ** 2
        a2 = complex(np.sum(np.conj(amp[:-2]) * amp[2:] * _ladder2(len(amp))))
    else:
        m = state.entries
        dist = np.real(np.diag(m)).copy()
        a2 = complex(np.sum(np.diagonal(m, offset=-2) * _ladder2(m.shape[0])))
    n = np.arange(len(dist), dtype=float)
    mean = float(np.dot(n, dist))
    total = float(np.sum(dist))
    x2 = (2.0 * mean + total - 2.0 * np.real(a2)) / 4.0
    x1 = (2.0 * mean + total + 2.0 * np.real(a2)) / 4.0
    return Observables(mean_n=mean, x1_var=x1, x2_var=x2, distribution=dist)


def _ladder2(dim: int) -> np.ndarray:
    j = np.arange(dim - 2, dtype=float)
    return np.sqrt((j + 1.0) * (j + 2.0))


def fidelity(a: FockVector, b: FockVector) -> float:
    """|<a|b>|^2 on the common truncated space."""
    n = min(len(a.amplitudes), len(b.amplitudes))
    return float(np.abs(np.vdot(a.amplitudes[:n], b.amplitudes[:n])) ** 2)
