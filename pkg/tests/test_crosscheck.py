import pytest

from squeezegain import Tolerances, compare_cell, run_grid


def test_thin_cell_compares_raw():
    cell = compare_cell(0, 2, 2.0, 0.02)
    assert cell.raw is True
    assert cell.tail < 1e-12
    assert cell.d_mean < 1e-10
    assert cell.d_var < 1e-10
    assert cell.d_prob_rel < 1e-11
    assert cell.fid_deficit < 1e-11
    assert cell.ok()


def test_fat_cell_is_tail_limited_but_attributable():
    # high squeezing with a gentle tap pushes real mass past n_max = 80
    cell = compare_cell(0, 6, 8.0, 0.02)
    assert cell.raw is False
    assert cell.tail == pytest.approx(8.78e-7, rel=0.01)
    # the probability shortfall is the tail mass itself
    assert cell.prob_attribution <= 0.02 * cell.tail + 1e-12
    assert cell.d_mean < 1e-10 and cell.d_var < 1e-10
    assert cell.ok()


def test_fat_cell_becomes_thin_with_more_headroom():
    cell = compare_cell(0, 6, 8.0, 0.02, n_max=144)
    assert cell.raw is True
    assert cell.ok()


def test_zero_probability_cell_is_rejected():
    with pytest.raises(ValueError):
        compare_cell(0, 1, 0.0, 0.1)


def test_run_grid_deterministic_order_and_health():
    cells = run_grid(ks=(0, 1, 2), s_values=(1.0, 4.0), b_values=(0.1, 0.5))
    keys = [(c.ancilla, c.k, c.S_dB, c.B) for c in cells]
    expected = [
        (anc, k, S, B)
        for anc in (0, 1)
        for k in (0, 1, 2)
        for S in (1.0, 4.0)
        for B in (0.1, 0.5)
    ]
    assert keys == expected
    assert all(c.ok() for c in cells)


def test_tolerances_can_be_tightened_to_failure():
    cell = compare_cell(0, 6, 8.0, 0.02)
    assert cell.ok()
    assert not cell.ok(Tolerances(attribution_rel=-1.0))
