import warnings

import numpy as np
import pytest

from squeezegain import (
    BeamSplitterParams,
    MixedStateSecondOrder,
    StateSpec,
    TruncationConfig,
    ValidityWarning,
    herald_povm,
    mixed_state,
    norm_factor_eta,
    observables,
    probability,
    probability_eta,
    second_order_weights,
    smsv_vector,
    squeeze_from_db,
    variance,
    variance_eta,
)


def test_unit_efficiency_is_bit_identical_to_projective():
    for k in (0, 2, 4, 6):
        for y1, B in ((0.05, 0.3), (0.135, 0.0203), (0.19, 1.5)):
            spec = StateSpec(0, k, y1, B)
            assert second_order_weights(spec, 1.0) == (0.0, 0.0)
            assert variance_eta(spec, 1.0) == variance(spec)
            assert probability_eta(spec, 1.0) == probability(spec)


def test_domain_rejections():
    with pytest.raises(ValueError):
        second_order_weights(StateSpec(0, 3, 0.1, 0.5), 0.9)  # odd k
    with pytest.raises(ValueError):
        second_order_weights(StateSpec(1, 2, 0.1, 0.5), 0.9)  # added branch
    with pytest.raises(ValueError):
        second_order_weights(StateSpec(0, 2, 0.1, 0.5), 0.0)
    with pytest.raises(ValueError):
        second_order_weights(StateSpec(0, 2, 0.1, 0.5), 1.1)


def test_weights_follow_the_probability_ladder():
    # w1/(1-eta) equals (k+1) P_{k+1} / P_k, the exact binomial ratio
    eta = 0.9
    for k in (0, 2, 4):
        for y1, B in ((0.1, 0.4), (0.2, 0.9)):
            spec = StateSpec(0, k, y1, B)
            w1, w2 = second_order_weights(spec, eta)
            p_k = probability(spec)
            p_k1 = probability(StateSpec(0, k + 1, y1, B))
            p_k2 = probability(StateSpec(0, k + 2, y1, B))
            assert w1 == pytest.approx((1 - eta) * (k + 1) * p_k1 / p_k, rel=1e-12)
            assert w2 == pytest.approx(
                0.5 * (1 - eta) ** 2 * (k + 1) * (k + 2) * p_k2 / p_k, rel=1e-12
            )


def test_second_order_matches_exact_povm_when_weights_are_small():
    squeeze = squeeze_from_db(2.0)
    spec = StateSpec.from_squeezing(squeeze, k=2, B=0.02)
    eta = 0.95
    sv = smsv_vector(squeeze, TruncationConfig(n_max=60))
    rho, p_exact = herald_povm(sv, 0, BeamSplitterParams.from_b(0.02), 2, eta)
    assert variance_eta(spec, eta) == pytest.approx(observables(rho).x2_var, abs=1e-9)
    assert probability_eta(spec, eta) == pytest.approx(p_exact, rel=1e-8)


def test_validity_warning_fires_outside_the_expansion_region():
    spec = StateSpec(0, 2, 0.1, 2.0)
    with pytest.warns(ValidityWarning):
        second_order_weights(spec, 0.3)


def test_no_warning_in_the_safe_region():
    spec = StateSpec(0, 2, 0.135, 0.0203)
    with warnings.catch_warnings(record=True) as seen:
        warnings.simplefilter("always")
        second_order_weights(spec, 0.95)
    assert not any(issubclass(w.category, ValidityWarning) for w in seen)


def test_mixture_container():
    spec = StateSpec(0, 2, 0.1, 0.5)
    mix = MixedStateSecondOrder.build(spec, 0.9)
    assert mix.norm == 1.0 + mix.w1 + mix.w2
    assert mix.norm == pytest.approx(norm_factor_eta(spec, 0.9), rel=1e-15)
    assert mix.w1 > mix.w2 > 0.0


def test_mixed_state_density_matrix():
    spec = StateSpec(0, 2, 0.1, 0.3)
    rho = mixed_state(spec, 0.9, n_max=80)
    rho.check()
    assert observables(rho).x2_var == pytest.approx(variance_eta(spec, 0.9), abs=1e-12)
    # at unit efficiency only the projective part survives
    pure = mixed_state(spec, 1.0, n_max=80)
    eigs = np.linalg.eigvalsh(pure.entries)
    assert eigs[-1] == pytest.approx(1.0, abs=1e-12)
    assert abs(eigs[-2]) < 1e-12
