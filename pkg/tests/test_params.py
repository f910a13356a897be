import math

import pytest
from hypothesis import given, strategies as st

from squeezegain import (
    BeamSplitterParams,
    SqueezeParams,
    StateSpec,
    smsv_variance,
    squeeze_from_db,
    squeezing_db,
)


def test_db_conversion_anchors():
    p = squeeze_from_db(0.0)
    assert p.s == 0.0 and p.y == 0.0 and p.mean_n == 0.0
    p = squeeze_from_db(10.0)
    assert p.s == pytest.approx(math.log(10.0) / 2.0, abs=1e-15)
    p = squeeze_from_db(2.026)
    assert p.s == pytest.approx(0.23325186992029684, abs=1e-15)
    assert p.y == pytest.approx(0.11455590537919721, abs=1e-15)


@given(st.floats(min_value=0.0, max_value=15.0))
def test_db_round_trip(S):
    p = SqueezeParams.from_db(S)
    assert SqueezeParams.from_s(p.s).S_dB == pytest.approx(S, abs=1e-12)
    assert SqueezeParams.from_y(p.y).S_dB == pytest.approx(S, abs=1e-9)
    # variance in dB recovers the input squeezing
    assert squeezing_db(smsv_variance(p)) == pytest.approx(S, abs=1e-12)


def test_smsv_variance_and_mean():
    p = SqueezeParams.from_s(0.7)
    assert smsv_variance(p) == pytest.approx(math.exp(-1.4) / 4.0, rel=1e-15)
    assert p.mean_n == pytest.approx(math.sinh(0.7) ** 2, rel=1e-15)


def test_squeeze_params_rejects_bad_input():
    with pytest.raises(ValueError):
        SqueezeParams.from_db(-0.1)
    with pytest.raises(ValueError):
        SqueezeParams.from_s(float("nan"))
    with pytest.raises(ValueError):
        SqueezeParams.from_y(0.5)
    with pytest.raises(ValueError):
        SqueezeParams.from_y(-1e-9)


def test_squeezing_db_rejects_nonpositive_variance():
    with pytest.raises(ValueError):
        squeezing_db(0.0)


def test_beam_splitter_param_maps():
    bs = BeamSplitterParams.from_t(0.99)
    assert bs.B == pytest.approx(0.0203040506070809, abs=1e-15)
    assert bs.r == pytest.approx(math.sqrt(1 - 0.99 ** 2), rel=1e-15)
    bs2 = BeamSplitterParams.from_b(bs.B)
    assert bs2.t == pytest.approx(0.99, abs=1e-15)
    ident = BeamSplitterParams.from_t(1.0)
    assert ident.B == 0.0 and ident.r == 0.0


def test_beam_splitter_rejects_bad_input():
    for t in (0.0, -0.5, 1.1):
        with pytest.raises(ValueError):
            BeamSplitterParams.from_t(t)
    with pytest.raises(ValueError):
        BeamSplitterParams.from_b(-0.1)


def test_state_spec_validation():
    StateSpec(ancilla=0, k=8, y1=0.1, B=0.5)  # cap boundary is fine
    with pytest.raises(ValueError):
        StateSpec(ancilla=2, k=2, y1=0.1, B=0.5)
    with pytest.raises(ValueError):
        StateSpec(ancilla=0, k=-1, y1=0.1, B=0.5)
    with pytest.raises(ValueError):
        StateSpec(ancilla=0, k=9, y1=0.1, B=0.5)
    StateSpec(ancilla=0, k=9, y1=0.1, B=0.5, allow_high_k=True)
    with pytest.raises(ValueError):
        StateSpec(ancilla=0, k=2, y1=0.5, B=0.5)
    with pytest.raises(ValueError):
        StateSpec(ancilla=0, k=2, y1=0.1, B=-0.1)
    with pytest.raises(ValueError):
        StateSpec(ancilla=0, k=2, y1=0.3, B=1.5)  # y1 (1+B) >= 0.5


def test_state_spec_support_parity():
    assert not StateSpec(0, 2, 0.1, 0.5).parity_odd
    assert StateSpec(0, 3, 0.1, 0.5).parity_odd
    assert StateSpec(1, 2, 0.1, 0.5).parity_odd
    assert not StateSpec(1, 3, 0.1, 0.5).parity_odd


def test_state_spec_from_squeezing():
    p = squeeze_from_db(3.0)
    spec = StateSpec.from_squeezing(p, k=2, ancilla=0, B=0.25)
    assert spec.y1 == pytest.approx(p.y / 1.25, rel=1e-15)
    assert spec.y == pytest.approx(p.y, rel=1e-15)
    assert spec.input_squeeze.S_dB == pytest.approx(3.0, abs=1e-12)
    # a bare dB number works too
    spec2 = StateSpec.from_squeezing(3.0, k=2, ancilla=0, B=0.25)
    assert spec2 == spec
