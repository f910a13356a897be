"""Closed-form photon-number content of the heralded states.

Tapping an SMSV state with a beam splitter (ancilla Fock state 0 or 1 injected
into the tap port) and detecting k photons there leaves the transmitted mode in
a pure state whose Fock amplitudes, norm, mean photon number, squeezed-
quadrature variance and herald probability all reduce to combinations of the
derivatives Z^(j)(y1) tabulated in `ztable`.

Conventions used throughout:

* y1 = y/(1+B) with y the input SMSV series parameter and B = (1-t^2)/t^2.
* All amplitudes are real; the global phase of a heralded state is fixed by
  making its lowest occupied Fock amplitude positive.
* The squeezed quadrature is X2 = (a - a^dag)/(2i) with vacuum variance 1/4.

For ancilla=0 and even k = 2u the unnormalized amplitudes on Fock state 2n are

    c_{2n} = y1^n (2(n+u))! / (sqrt((2n)!) (n+u)!),

with squared norm exactly Z^(2u)(y1); odd k shifts the support to odd Fock
numbers and the norm to Z^(2u+1).  For ancilla=1 the amplitudes acquire the
linear factors (1 - j B / k) in the Fock index j, and the squared norm becomes
the combination G_k of three Z-derivatives computed by `norm_factor_added`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import StateSpec, TruncationError
from .ztable import _z_list

__all__ = [
    "FockCoeffs",
    "hybrid_amplitude",
    "state_coefficients",
    "norm_factor_added",
    "g_derivative",
    "r_function",
    "mean_photon",
    "variance",
    "probability",
    "gain_db",
]


@dataclass(frozen=True)
class FockCoeffs:
    """Normalized Fock amplitudes of a heralded state on 0..n_max.

    norm is the accumulated squared norm of the truncated expansion; because
    the normalization divides by the exact closed-form total, 1 - norm is the
    mass truncated away.
    """

    coeffs: np.ndarray
    norm: float

    @property
    def tail(self) -> float:
        return max(0.0, 1.0 - self.norm)

    def __len__(self) -> int:
        return len(self.coeffs)


def hybrid_amplitude(spec: StateSpec) -> float:
    """Amplitude c_k multiplying the k-photon tap component, before normalization.

    The two-mode state after the beam splitter is sech(s)^(1/2) times
    sum_k c_k |phi_k> |k> with |phi_k> the unnormalized transmitted-mode
    series; the herald probability is sech(s) c_k^2 ||phi_k||^2.
    """
    k, y1, B = spec.k, spec.y1, spec.B
    if spec.ancilla == 0:
        return (-1.0) ** k * (y1 * B) ** (k / 2.0) / math.sqrt(math.factorial(k))
    if k == 0:
        return math.sqrt(B / (1.0 + B))
    return (
        (-1.0) ** (k + 1)
        * (y1 * B) ** ((k - 1) / 2.0)
        * k
        / (math.sqrt(math.factorial(k)) * math.sqrt(1.0 + B))
    )


def _series_terms(spec: StateSpec, n_max: int):
    """Yield (fock_n, unnormalized amplitude) for the heralded state's series."""
    k, y1, B = spec.k, spec.y1, spec.B
    lny = math.log(y1) if y1 > 0.0 else None

    def mag(ln):
        return math.exp(ln)

    if spec.ancilla == 0:
        if k % 2 == 0:
            u = k // 2
            for n in range(0, (n_max // 2) + 1):
                if y1 == 0.0 and n > 0:
                    break
                ln = (
                    (n * lny if n else 0.0)
                    + math.lgamma(2 * (n + u) + 1)
                    - 0.5 * math.lgamma(2 * n + 1)
                    - math.lgamma(n + u + 1)
                )
                yield 2 * n, mag(ln)
        else:
            if y1 == 0.0:
                return
            u = (k - 1) // 2
            for n in range(0, (n_max - 1) // 2 + 1):
                ln = (
                    (n + 0.5) * lny
                    + math.lgamma(2 * (n + u + 1) + 1)
                    - 0.5 * math.lgamma(2 * n + 2)
                    - math.lgamma(n + u + 2)
                )
                yield 2 * n + 1, mag(ln)
        return

    # ancilla = 1
    if k == 0:
        for n in range(0, (n_max - 1) // 2 + 1):
            if y1 == 0.0 and n > 0:
                break
            ln = (n * lny if n else 0.0) + 0.5 * math.lgamma(2 * n + 2) - math.lgamma(n + 1)
            yield 2 * n + 1, mag(ln)
    elif k % 2 == 0:
        if y1 == 0.0:
            return
        m = k // 2
        for n in range(0, (n_max - 1) // 2 + 1):
            ln = (
                (n + 0.5) * lny
                + math.lgamma(2 * (n + m) + 1)
                - 0.5 * math.lgamma(2 * n + 2)
                - math.lgamma(n + m + 1)
            )
            yield 2 * n + 1, mag(ln) * (1.0 - (2 * n + 1) * B / k)
    else:
        m = (k - 1) // 2
        for n in range(0, n_max // 2 + 1):
            if y1 == 0.0 and n > 0:
                break
            ln = (
                (n * lny if n else 0.0)
                + math.lgamma(2 * (n + m) + 1)
                - 0.5 * math.lgamma(2 * n + 1)
                - math.lgamma(n + m + 1)
            )
            yield 2 * n, mag(ln) * (1.0 - 2 * n * B / k)


def state_coefficients(spec: StateSpec, n_max: int, tail_tol: float | None = 1e-12) -> FockCoeffs:
    """Normalized Fock amplitudes of the heralded state, truncated at n_max.

    The amplitudes are divided by the exact closed-form norm, so the returned
    accumulated norm equals 1 minus the truncated tail mass.  If tail_tol is
    not None and the tail exceeds it, a TruncationError is raised.  A herald
    of probability zero (e.g. odd k from vacuum) returns the zero vector with
    norm 0.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    total = _total_norm(spec)
    coeffs = np.zeros(n_max + 1)
    if total <= 0.0:
        return FockCoeffs(coeffs=coeffs, norm=0.0)
    root = math.sqrt(total)
    acc = 0.0
    for n, c in _series_terms(spec, n_max):
        c /= root
        coeffs[n] = c
        acc += c * c
    if tail_tol is not None and 1.0 - acc > tail_tol:
        raise TruncationError(
            f"truncated tail mass {1.0 - acc:.3e} exceeds {tail_tol:.1e} at n_max={n_max}",
            tail=1.0 - acc,
        )
    return FockCoeffs(coeffs=coeffs, norm=acc)


def _total_norm(spec: StateSpec) -> float:
    """Exact squared norm of the unnormalized heralded series."""
    k, y1 = spec.k, spec.y1
    if spec.ancilla == 0:
        return _z_list(y1, k)[k]
    return norm_factor_added(k, y1, spec.B)


def norm_factor_added(k: int, y1: float, B: float) -> float:
    """Squared norm G_k of the unnormalized ancilla=1 heralded series.

    G_0 = Z^3 and, for k >= 1,

        G_k = Z^(k-1) - (2B/k) y1 Z^(k) + (B/k)^2 (y1 Z^(k) + y1^2 Z^(k+1)),

    all derivatives evaluated at y1.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        z = _z_list(y1, 0)[0]
        return z ** 3
    z = _z_list(y1, k + 1)
    b = B / k
    return z[k - 1] - 2.0 * b * y1 * z[k] + b * b * (y1 * z[k] + y1 * y1 * z[k + 1])


def g_derivative(k: int, y1: float, B: float) -> float:
    """dG_k/dy1, obtained by differentiating each Z-derivative once."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        z = _z_list(y1, 0)[0]
        return 12.0 * y1 * z ** 5
    z = _z_list(y1, k + 2)
    b = B / k
    return (
        z[k]
        - 2.0 * b * (z[k] + y1 * z[k + 1])
        + b * b * (z[k] + 3.0 * y1 * z[k + 1] + y1 * y1 * z[k + 2])
    )


def r_function(k: int, y1: float, B: float) -> float:
    """Auxiliary combination R_k entering the ancilla=1 variance, k >= 1:

        R_k = k Z^(k-1) + (1-B) y1 Z^(k) - (B/k) (y1 Z^(k) + y1^2 Z^(k+1)).
    """
    if k < 1:
        raise ValueError(f"r_function requires k >= 1, got {k}")
    z = _z_list(y1, k + 1)
    return (
        k * z[k - 1]
        + (1.0 - B) * y1 * z[k]
        - (B / k) * (y1 * z[k] + y1 * y1 * z[k + 1])
    )


def _kern(k: int, y1: float, mean: float) -> float:
    # Variance kernel of the ancilla=0 branch: var = 1/4 + _kern(k, y1, <n_k>).
    return mean * (1.0 - 2.0 * y1) / 2.0 - y1 * (k + 1)


def mean_photon(spec: StateSpec) -> float:
    """Mean photon number of the heralded state.

    ancilla=0: y1 Z^(k+1)/Z^(k).  ancilla=1: 1 + y1 G_0'/G_0 for k=0 (the
    support sits on odd Fock numbers 2n+1 while the norm series runs in
    y1^(2n), hence the extra 1), and y1 G_k'/G_k for k >= 1, where the
    square-root-of-y1 prefactor of the series keeps the powers aligned with
    the photon number.
    """
    k, y1 = spec.k, spec.y1
    if spec.ancilla == 0:
        z = _z_list(y1, k + 1)
        if z[k] == 0.0:
            raise ValueError("heralded state has zero probability; mean undefined")
        return y1 * z[k + 1] / z[k]
    g = norm_factor_added(k, y1, spec.B)
    if g <= 0.0:
        raise ValueError("heralded state has zero probability; mean undefined")
    base = y1 * g_derivative(k, y1, spec.B) / g
    return base + 1.0 if k == 0 else base


def variance(spec: StateSpec) -> float:
    """Squeezed-quadrature variance <X2^2> of the heralded state.

    All branches share the kernel 1/4 + <n>(1 - 2 y1)/2 plus a branch term:
    -(k+1) y1 for ancilla=0, -2 y1 for ancilla=1 with k=0, and
    -k y1 + 2 y1 B R_k / (k G_k) for ancilla=1 with k >= 1.
    """
    k, y1, B = spec.k, spec.y1, spec.B
    mean = mean_photon(spec)
    if spec.ancilla == 0:
        # Grouped as 1/4 + kernel so the eta<1 model reduces bitwise at eta=1.
        return 0.25 + _kern(k, y1, mean)
    base = 0.25 + mean * (1.0 - 2.0 * y1) / 2.0
    if k == 0:
        return base - 2.0 * y1
    g = norm_factor_added(k, y1, B)
    return base - k * y1 + 2.0 * y1 * B * r_function(k, y1, B) / (k * g)


def probability(spec: StateSpec) -> float:
    """Probability of detecting k tap photons.

    ancilla=0: sqrt(1-4y^2) (y1 B)^k Z^(k)(y1) / k!.
    ancilla=1: sqrt(1-4y^2) B Z^3(y1) / (1+B) for k=0 and
               sqrt(1-4y^2) (y1 B)^(k-1) k^2 G_k / (k! (1+B)) for k >= 1.
    Summed over k and both ancilla branches this is a resolution of unity.
    """
    k, y1, B = spec.k, spec.y1, spec.B
    y = spec.y
    sech = math.sqrt(1.0 - 4.0 * y * y)
    if spec.ancilla == 0:
        z = _z_list(y1, k)[k]
        return sech * (y1 * B) ** k * z / math.factorial(k)
    if k == 0:
        z = _z_list(y1, 0)[0]
        return sech * B * z ** 3 / (1.0 + B)
    g = norm_factor_added(k, y1, B)
    return sech * (y1 * B) ** (k - 1) * k * k * g / (math.factorial(k) * (1.0 + B))


def gain_db(var: float, ref_var: float) -> float:
    """Squeezing gain 10 lg(ref_var / var) in dB; positive when var < ref_var."""
    if var <= 0.0 or ref_var <= 0.0:
        raise ValueError("variances must be positive")
    return 10.0 * math.log10(ref_var / var)
