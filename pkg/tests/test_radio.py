"""Radio model: frozen closed-form oracle values and monotonicity properties."""

import math

import pytest
from hypothesis import given, strategies as st

from kpa.ran import compute_cqi, compute_rsrp, compute_sinr
from tests.util import make_cell


def closed_form_rsrp(d_m: float, tx_dbm: float) -> float:
    # Independent evaluation of the pathloss law, kept apart from the
    # implementation on purpose.
    return tx_dbm - (32.0 + 35.0 * math.log10(max(d_m, 1.0)))


class TestRsrp:
    def test_reference_distance(self):
        cell = make_cell(position=(0.0, 0.0), tx=30.0)
        assert compute_rsrp((1.0, 0.0), cell) == pytest.approx(-2.0)

    def test_decade_slope_is_35_db(self):
        cell = make_cell(position=(0.0, 0.0), tx=30.0)
        at_d0 = compute_rsrp((1.0, 0.0), cell)
        at_10d0 = compute_rsrp((10.0, 0.0), cell)
        assert at_d0 - at_10d0 == pytest.approx(35.0)

    def test_500m_against_closed_form(self):
        cell = make_cell(position=(0.0, 0.0), tx=30.0)
        got = compute_rsrp((500.0, 0.0), cell)
        assert got == pytest.approx(closed_form_rsrp(500.0, 30.0))
        assert got == pytest.approx(-96.46395015176066)

    def test_below_reference_distance_clamps(self):
        cell = make_cell(position=(0.0, 0.0), tx=30.0)
        assert compute_rsrp((0.0, 0.0), cell) == compute_rsrp((1.0, 0.0), cell)

    @given(
        d1=st.floats(min_value=0.0, max_value=5000.0),
        d2=st.floats(min_value=0.0, max_value=5000.0),
    )
    def test_monotone_in_distance(self, d1, d2):
        cell = make_cell(position=(0.0, 0.0), tx=30.0)
        if d1 > d2:
            d1, d2 = d2, d1
        assert compute_rsrp((d1, 0.0), cell) >= compute_rsrp((d2, 0.0), cell)


class TestCqi:
    def test_lower_clamp(self):
        assert compute_cqi(-6.0) == 0
        assert compute_cqi(-40.0) == 0

    def test_upper_clamp(self):
        assert compute_cqi(24.0) == 15
        assert compute_cqi(80.0) == 15

    def test_mid_value(self):
        assert compute_cqi(10.0) == 8

    @pytest.mark.parametrize(
        "sinr,expected",
        [(-6.1, 0), (0.0, 3), (-5.0, 1), (7.0, 7), (9.0, 8), (23.9, 15)],
    )
    def test_table(self, sinr, expected):
        assert compute_cqi(sinr) == expected

    @given(
        s1=st.floats(min_value=-60.0, max_value=60.0),
        s2=st.floats(min_value=-60.0, max_value=60.0),
    )
    def test_monotone_and_bounded(self, s1, s2):
        if s1 > s2:
            s1, s2 = s2, s1
        c1, c2 = compute_cqi(s1), compute_cqi(s2)
        assert 0 <= c1 <= 15 and 0 <= c2 <= 15
        assert c1 <= c2


def test_sinr_is_rsrp_over_noise_floor():
    assert compute_sinr(-90.0) == pytest.approx(10.0)
    assert compute_sinr(-90.0, noise_floor_dbm=-95.0) == pytest.approx(5.0)
