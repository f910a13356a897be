"""Squeezing parameterizations and heralded-state descriptors.

A single-mode squeezed vacuum (SMSV) state is parameterized interchangeably by
the squeezing factor s >= 0, the decibel value S = -10*lg(exp(-2s)), or the
series parameter y = tanh(s)/2 in [0, 0.5).  A beam splitter is parameterized
by its transmittance t or by B = (1 - t^2)/t^2.  A heralded state is fixed by
(ancilla, k, y1, B) where y1 = y/(1+B) and k is the detected photon number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Default cap on the heralded photon number; higher k is allowed only with an
# explicit opt-in because the closed forms have not been validated there.
K_CAP = 8

# Reject y1 at or above this value; y1 = 0.5 is the Z(y) singularity.
Y1_LIMIT = 0.499

_LN10 = math.log(10.0)


class TruncationError(RuntimeError):
    """Raised when a truncated Fock expansion leaves too much tail mass.

    The offending tail mass is available as the ``tail`` attribute.
    """

    def __init__(self, message: str, tail: float):
        super().__init__(message)
        self.tail = tail


@dataclass(frozen=True)
class SqueezeParams:
    """Input squeezing in all three parameterizations plus the mean photon number."""

    s: float
    y: float
    S_dB: float
    mean_n: float

    def __post_init__(self):
        if not math.isfinite(self.s) or self.s < 0.0:
            raise ValueError(f"squeezing factor must be finite and >= 0, got {self.s}")

    @classmethod
    def from_s(cls, s: float) -> "SqueezeParams":
        if not math.isfinite(s) or s < 0.0:
            raise ValueError(f"squeezing factor must be finite and >= 0, got {s}")
        return cls(
            s=s,
            y=math.tanh(s) / 2.0,
            S_dB=20.0 * s / _LN10,
            mean_n=math.sinh(s) ** 2,
        )

    @classmethod
    def from_db(cls, S_dB: float) -> "SqueezeParams":
        if not math.isfinite(S_dB) or S_dB < 0.0:
            raise ValueError(f"squeezing in dB must be finite and >= 0, got {S_dB}")
        return cls.from_s(S_dB * _LN10 / 20.0)

    @classmethod
    def from_y(cls, y: float) -> "SqueezeParams":
        if not 0.0 <= y < 0.5:
            raise ValueError(f"series parameter y must lie in [0, 0.5), got {y}")
        return cls.from_s(math.atanh(2.0 * y))


def squeeze_from_db(S_dB: float) -> SqueezeParams:
    """Convenience constructor; see SqueezeParams.from_db."""
    return SqueezeParams.from_db(S_dB)


def smsv_variance(params: SqueezeParams) -> float:
    """Squeezed-quadrature variance exp(-2s)/4 of the input SMSV state."""
    return math.exp(-2.0 * params.s) / 4.0


def squeezing_db(var: float) -> float:
    """Squeezing of a variance relative to the vacuum value 1/4, in dB."""
    if var <= 0.0:
        raise ValueError(f"variance must be positive, got {var}")
    return -10.0 * math.log10(4.0 * var)


@dataclass(frozen=True)
class BeamSplitterParams:
    """Beam splitter with transmittance t, reflectance r = sqrt(1-t^2), B = r^2/t^2."""

    t: float
    r: float
    B: float

    @classmethod
    def from_t(cls, t: float) -> "BeamSplitterParams":
        if not 0.0 < t <= 1.0:
            raise ValueError(f"transmittance must lie in (0, 1], got {t}")
        r2 = max(0.0, 1.0 - t * t)
        return cls(t=t, r=math.sqrt(r2), B=r2 / (t * t))

    @classmethod
    def from_b(cls, B: float) -> "BeamSplitterParams":
        if not (math.isfinite(B) and B >= 0.0):
            raise ValueError(f"B must be finite and >= 0, got {B}")
        return cls.from_t(1.0 / math.sqrt(1.0 + B))


@dataclass(frozen=True)
class StateSpec:
    """Specification of a heralded state.

    ancilla is the photon number injected into the tap mode (0 or 1), k the
    photon number detected there, y1 = y/(1+B) the effective series parameter
    of the transmitted mode.  Fock support parity is fixed: the state occupies
    odd photon numbers iff k + ancilla is odd.
    """

    ancilla: int
    k: int
    y1: float
    B: float
    allow_high_k: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.ancilla not in (0, 1):
            raise ValueError(f"ancilla must be 0 or 1, got {self.ancilla}")
        if not (isinstance(self.k, int) and self.k >= 0):
            raise ValueError(f"k must be a nonnegative integer, got {self.k}")
        if self.k > K_CAP and not self.allow_high_k:
            raise ValueError(
                f"k={self.k} exceeds the validated cap {K_CAP}; "
                "pass allow_high_k=True to override"
            )
        if not 0.0 <= self.y1 < 0.5:
            raise ValueError(f"y1 must lie in [0, 0.5), got {self.y1}")
        if not (math.isfinite(self.B) and self.B >= 0.0):
            raise ValueError(f"B must be finite and >= 0, got {self.B}")
        if self.y1 * (1.0 + self.B) >= 0.5:
            raise ValueError(
                f"y1 (1+B) = {self.y1 * (1.0 + self.B)} implies an unphysical "
                "input squeezing; it must stay below 0.5"
            )

    @classmethod
    def from_squeezing(
        cls,
        squeeze: SqueezeParams | float,
        k: int,
        ancilla: int = 0,
        B: float = 0.0,
        allow_high_k: bool = False,
    ) -> "StateSpec":
        """Build a spec from input squeezing (SqueezeParams or dB value) and B."""
        if not isinstance(squeeze, SqueezeParams):
            squeeze = SqueezeParams.from_db(squeeze)
        return cls(
            ancilla=ancilla,
            k=k,
            y1=squeeze.y / (1.0 + B),
            B=B,
            allow_high_k=allow_high_k,
        )

    @property
    def y(self) -> float:
        """Series parameter of the input SMSV state."""
        return self.y1 * (1.0 + self.B)

    @property
    def input_squeeze(self) -> SqueezeParams:
        return SqueezeParams.from_y(self.y)

    @property
    def parity_odd(self) -> bool:
        """True when the heralded state occupies odd Fock numbers."""
        return (self.k + self.ancilla) % 2 == 1
