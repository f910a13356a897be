"""Squeezing gain of photon-subtracted squeezed vacuum states.

Closed-form photon statistics, gain optimization and an independent
truncated-Fock-space oracle for heralded photon subtraction (ancilla=0) and
addition-then-subtraction (ancilla=1) from single-mode squeezed vacuum.
"""

__version__ = "0.1.0"

from .analytic import (
    FockCoeffs,
    gain_db,
    g_derivative,
    hybrid_amplitude,
    mean_photon,
    norm_factor_added,
    probability,
    r_function,
    state_coefficients,
    variance,
)
from .crosscheck import (
    DEFAULT_B_VALUES,
    DEFAULT_K_VALUES,
    DEFAULT_S_VALUES,
    CellComparison,
    Tolerances,
    compare_cell,
    run_grid,
)
from .detector import (
    MixedStateSecondOrder,
    ValidityWarning,
    mixed_state,
    norm_factor_eta,
    probability_eta,
    second_order_weights,
    variance_eta,
)
from .optimize import (
    DEFAULT_B_RANGE,
    PUBLISHED_B_FLOOR,
    BrightnessRow,
    OptimizationResult,
    SweepRow,
    brightness_curve,
    gain_curve,
    gain_width,
    golden_section,
    max_gain,
    minimize_over_B,
)
from .oracle import (
    DensityMatrix,
    FockVector,
    Observables,
    TruncationConfig,
    TwoModeVector,
    beam_split,
    fidelity,
    herald_povm,
    herald_project,
    observables,
    smsv_vector,
    two_mode_product,
)
from .params import (
    K_CAP,
    Y1_LIMIT,
    BeamSplitterParams,
    SqueezeParams,
    StateSpec,
    TruncationError,
    smsv_variance,
    squeeze_from_db,
    squeezing_db,
)
from .ztable import ZTable, z_table, z_table_series

__all__ = [
    "__version__",
    "K_CAP",
    "Y1_LIMIT",
    "BeamSplitterParams",
    "SqueezeParams",
    "StateSpec",
    "TruncationError",
    "smsv_variance",
    "squeeze_from_db",
    "squeezing_db",
    "ZTable",
    "z_table",
    "z_table_series",
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
    "ValidityWarning",
    "MixedStateSecondOrder",
    "second_order_weights",
    "norm_factor_eta",
    "variance_eta",
    "probability_eta",
    "mixed_state",
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
    "CellComparison",
    "Tolerances",
    "compare_cell",
    "run_grid",
    "DEFAULT_K_VALUES",
    "DEFAULT_S_VALUES",
    "DEFAULT_B_VALUES",
]
