import math

import pytest

from semiharmonic import timing
from semiharmonic.errors import BracketError, DomainError
from semiharmonic.model import unit_area_symmetric
from semiharmonic.timing import (
    delay_maxima,
    delta_limit_ea,
    find_sign_change,
    first_sign_change,
    tau_e,
    tau_p,
    tau_w,
)

# parabolic-cylinder reference values, tests/data/compute_oracles.py
TAU_E_05 = 1.0693480243271846845
TAU_E_25 = 4.553943242609051421


def test_tau_e_oracle(narrow_well, wide_well):
    assert tau_e(narrow_well, 1.0) == pytest.approx(TAU_E_05, rel=1e-8)
    assert tau_e(wide_well, 1.0) == pytest.approx(TAU_E_25, rel=1e-8)


def test_tau_p(wide_well, unit_delta):
    assert tau_p(wide_well, 1.0) == 2.5
    assert tau_p(wide_well, 0.25) == 5.0
    assert tau_p(unit_delta, 1.0) == 0.0


def test_tau_w_relation_is_exact(wide_well):
    for e in (0.02, 0.3, 2.0):
        s = tau_w(wide_well, e)
        assert s.tau_w == s.tau_p - s.tau_e


def test_tau_e_guard(wide_well):
    with pytest.raises(DomainError):
        tau_e(wide_well, 1e-5)


def test_step_size_insensitive(wide_well):
    assert tau_e(wide_well, 0.5, h=1e-3) == pytest.approx(tau_e(wide_well, 0.5, h=2e-4), rel=1e-7)


@pytest.mark.parametrize("a, e_a", [(2.5, 0.03406092), (2.0, 0.05056413), (0.5, 0.16473112)])
def test_table_rows(a, e_a):
    assert first_sign_change(unit_area_symmetric(a)) == pytest.approx(e_a, abs=1e-7)


def test_negative_below_sign_change(wide_well):
    assert tau_e(wide_well, 0.01) < 0 < tau_e(wide_well, 0.1)


def test_find_sign_change_bracket(wide_well):
    with pytest.raises(BracketError):
        find_sign_change(wide_well, 0.5, 1.0)


def test_first_sign_change_window():
    with pytest.raises(BracketError):
        first_sign_change(unit_area_symmetric(2.5), 0.5, 1.0)
    with pytest.raises(DomainError):
        first_sign_change(unit_area_symmetric(2.5), 1.0, 0.5)


def test_delay_maxima_wide(wide_well):
    assert delay_maxima(wide_well, 0.05, 5.0).maxima == [pytest.approx(0.408092, abs=1e-4)]


def test_maxima_shift_up_as_width_shrinks():
    wide = delay_maxima(unit_area_symmetric(0.4), 0.05, 10.0).maxima
    narrow = delay_maxima(unit_area_symmetric(0.03), 0.05, 10.0).maxima
    assert wide[0] == pytest.approx(3.7315, abs=1e-3)
    assert narrow[0] > wide[0]


def test_richardson_exact_on_polynomials():
    a = [0.4, 0.2, 0.1, 0.05]
    assert timing._richardson_zero(a, [1 + 2 * x - 3 * x**3 for x in a]) == pytest.approx(1.0, abs=1e-13)


@pytest.mark.slow
def test_delta_limit():
    lim = delta_limit_ea()
    assert float(lim) == pytest.approx(0.45727096, abs=1e-6)
    assert lim.direct == pytest.approx(0.45727096, abs=1e-6)
    assert lim.discrepancy < 1e-6
    assert list(lim.e_values) == sorted(lim.e_values)


def test_delta_delay_oscillates_near_half_pi(unit_delta):
    import numpy as np

    taus = [tau_e(unit_delta, e) for e in np.linspace(2.0, 10.0, 200)]
    assert abs(float(np.mean(taus)) - math.pi / 2) < 0.05


@pytest.mark.parametrize("a, e_a", [(2.5, 0.03406092), (2.0, 0.05056413), (1.5, 0.07205970), (1.0, 0.10100123), (0.5, 0.16473112)])
def test_negativity_window(a, e_a):
    cfg = unit_area_symmetric(a)
    assert all(tau_e(cfg, e_a / f) < 0 for f in (8, 4, 2))
    assert all(tau_e(cfg, f * e_a) > 0 for f in (2, 4))
