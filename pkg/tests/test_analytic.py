import math

import numpy as np
import pytest

from squeezegain import (
    SqueezeParams,
    StateSpec,
    TruncationConfig,
    TruncationError,
    gain_db,
    hybrid_amplitude,
    mean_photon,
    norm_factor_added,
    probability,
    r_function,
    smsv_variance,
    smsv_vector,
    squeeze_from_db,
    state_coefficients,
    variance,
    z_table,
)


def _series_obs(coeffs):
    """Mean and X2 variance straight from the amplitudes, bypassing the closed forms."""
    c = np.asarray(coeffs, dtype=float)
    n = np.arange(len(c), dtype=float)
    mean = float(np.dot(n, c * c))
    a2 = float(np.sum(c[:-2] * c[2:] * np.sqrt((n[:-2] + 1.0) * (n[:-2] + 2.0))))
    return mean, (2.0 * mean + 1.0 - 2.0 * a2) / 4.0


def test_hybrid_amplitude_examples():
    assert hybrid_amplitude(StateSpec(0, 2, 0.1, 0.5)) == pytest.approx(
        0.05 / math.sqrt(2.0), rel=1e-15
    )
    assert hybrid_amplitude(StateSpec(0, 1, 0.1, 0.5)) == pytest.approx(
        -math.sqrt(0.05), rel=1e-15
    )
    assert hybrid_amplitude(StateSpec(0, 0, 0.1, 0.5)) == 1.0
    assert hybrid_amplitude(StateSpec(1, 0, 0.1, 0.5)) == pytest.approx(
        math.sqrt(1.0 / 3.0), rel=1e-15
    )
    assert hybrid_amplitude(StateSpec(1, 2, 0.1, 0.5)) == pytest.approx(
        -math.sqrt(0.05) * 2.0 / (math.sqrt(2.0) * math.sqrt(1.5)), rel=1e-15
    )


def test_plain_smsv_recovered_when_nothing_is_tapped():
    # ancilla=0, k=0, B=0 leaves the input state untouched
    squeeze = squeeze_from_db(2.5)
    spec = StateSpec(0, 0, squeeze.y, 0.0)
    fc = state_coefficients(spec, 60)
    sv = smsv_vector(squeeze, TruncationConfig(n_max=60))
    assert np.max(np.abs(fc.coeffs - sv.amplitudes.real)) < 1e-14
    assert mean_photon(spec) == pytest.approx(squeeze.mean_n, rel=1e-13)
    assert variance(spec) == pytest.approx(smsv_variance(squeeze), rel=1e-13)
    assert probability(spec) == pytest.approx(1.0, abs=1e-14)


def test_zero_k_herald_is_weaker_smsv():
    # heralding k=0 through a tap squeezes less: the output is SMSV with y -> y1
    spec = StateSpec(0, 0, 0.12, 0.8)
    weaker = SqueezeParams.from_y(0.12)
    assert variance(spec) == pytest.approx(smsv_variance(weaker), rel=1e-13)
    assert mean_photon(spec) == pytest.approx(weaker.mean_n, rel=1e-12)


def test_closed_mean_and_variance_match_the_series():
    # amplitude series and moment formulas are derived independently
    for anc in (0, 1):
        for k in range(0 if anc == 0 else 0, 7):
            for y1, B in ((0.05, 0.3), (0.135, 0.0203), (0.19, 1.5), (0.28, 0.7)):
                spec = StateSpec(anc, k, y1, B)
                if probability(spec) == 0.0:
                    continue
                fc = state_coefficients(spec, 150)
                assert fc.tail < 1e-13
                mean_s, var_s = _series_obs(fc.coeffs)
                assert mean_photon(spec) == pytest.approx(mean_s, abs=1e-9)
                assert variance(spec) == pytest.approx(var_s, abs=1e-9)


def test_support_parity_is_exact():
    for anc in (0, 1):
        for k in range(0, 7):
            spec = StateSpec(anc, k, 0.2, 0.6)
            fc = state_coefficients(spec, 80)
            off = fc.coeffs[0::2] if spec.parity_odd else fc.coeffs[1::2]
            assert np.all(off == 0.0)


def test_norm_factor_added_examples():
    zt = z_table(0.23, 1)
    assert norm_factor_added(1, 0.23, 0.0) == pytest.approx(zt[0], rel=1e-14)
    z0 = z_table(0.3, 0)[0]
    assert norm_factor_added(0, 0.3, 0.7) == pytest.approx(z0 ** 3, rel=1e-14)


def test_norm_factor_added_matches_series_sum():
    # G_k is the squared norm of the unnormalized amplitude series
    k, y1, B = 3, 0.2, 0.05
    m = (k - 1) // 2
    total = 0.0
    for n in range(120):
        ln = (
            n * math.log(y1)
            + math.lgamma(2 * (n + m) + 1)
            - 0.5 * math.lgamma(2 * n + 1)
            - math.lgamma(n + m + 1)
        )
        total += (math.exp(ln) * (1.0 - 2.0 * n * B / k)) ** 2
    assert norm_factor_added(k, y1, B) == pytest.approx(total, rel=1e-13)

    k, y1, B = 4, 0.15, 0.9
    m = k // 2
    total = 0.0
    for n in range(120):
        ln = (
            (n + 0.5) * math.log(y1)
            + math.lgamma(2 * (n + m) + 1)
            - 0.5 * math.lgamma(2 * n + 2)
            - math.lgamma(n + m + 1)
        )
        total += (math.exp(ln) * (1.0 - (2 * n + 1) * B / k)) ** 2
    assert norm_factor_added(k, y1, B) == pytest.approx(total, rel=1e-13)


def test_r_function_examples():
    assert r_function(1, 0.0, 0.0) == 1.0
    zt = z_table(0.1, 2)
    assert r_function(2, 0.1, 0.0) == pytest.approx(2.0 * zt[1] + 0.1 * zt[2], rel=1e-14)
    with pytest.raises(ValueError):
        r_function(0, 0.1, 0.5)


def test_added_mean_with_zero_clicks_counts_the_extra_photon():
    # brute force: weights y1^(2n) (2n+1)!/(n!)^2 on Fock level 2n+1
    for y1 in (0.05, 0.15, 0.3):
        num = den = 0.0
        for n in range(200):
            w = math.exp(
                2 * n * math.log(y1) + math.lgamma(2 * n + 2) - 2.0 * math.lgamma(n + 1)
            ) if y1 > 0 else (1.0 if n == 0 else 0.0)
            num += (2 * n + 1) * w
            den += w
        spec = StateSpec(1, 0, y1, 0.4)
        assert mean_photon(spec) == pytest.approx(num / den, rel=1e-12)
        z = z_table(y1, 0)[0]
        assert mean_photon(spec) == pytest.approx(1.0 + 12.0 * y1 * y1 * z * z, rel=1e-14)


def test_added_then_fully_reflected_single_click_returns_the_input():
    # B -> 0 with ancilla=1, k=1: the extra photon bounces straight out
    spec = StateSpec(1, 1, 0.21, 0.0)
    assert probability(spec) == pytest.approx(1.0, abs=1e-15)
    fc = state_coefficients(spec, 80)
    sv = smsv_vector(SqueezeParams.from_y(0.21), TruncationConfig(n_max=80))
    assert np.max(np.abs(fc.coeffs - sv.amplitudes.real)) < 1e-14


def test_herald_probabilities_sum_to_one():
    for anc in (0, 1):
        for y, B in ((0.3, 0.5), (0.15, 0.0203), (0.42, 1.5)):
            y1 = y / (1.0 + B)
            total = sum(
                probability(StateSpec(anc, k, y1, B, allow_high_k=True)) for k in range(81)
            )
            assert total == pytest.approx(1.0, abs=1e-10)


def test_probability_anchor_value():
    squeeze = squeeze_from_db(2.026)
    b = 0.0203040506070809
    spec = StateSpec(0, 2, squeeze.y / (1.0 + b), b)
    assert probability(spec) == pytest.approx(1.26755e-5, rel=1e-4)


def test_state_coefficients_truncation_error():
    spec = StateSpec(0, 2, 0.3, 0.5)
    with pytest.raises(TruncationError) as exc:
        state_coefficients(spec, 10)
    assert exc.value.tail > 1e-12
    # disabling the check returns the truncated expansion instead
    fc = state_coefficients(spec, 10, tail_tol=None)
    assert 0.0 < fc.norm < 1.0
    assert fc.tail == pytest.approx(1.0 - fc.norm, abs=1e-16)


def test_zero_probability_heralds():
    spec = StateSpec(0, 1, 0.0, 0.5)  # odd click from vacuum cannot happen
    assert probability(spec) == 0.0
    fc = state_coefficients(spec, 20)
    assert fc.norm == 0.0 and np.all(fc.coeffs == 0.0)
    with pytest.raises(ValueError):
        mean_photon(spec)


def test_gain_db():
    assert gain_db(0.25, 0.25) == 0.0
    assert gain_db(0.025, 0.25) == pytest.approx(10.0, rel=1e-15)
    with pytest.raises(ValueError):
        gain_db(0.0, 0.25)
