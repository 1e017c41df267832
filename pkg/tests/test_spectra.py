import pytest

from semiharmonic import spectra
from semiharmonic.errors import DomainError
from semiharmonic.model import WellConfig, delta_config, unit_area_symmetric
from semiharmonic.spectra import bound_states, count_by_area, matching_function

# parabolic-cylinder reference values, tests/data/compute_oracles.py
E0 = {0.5: -0.037435816638282273674, 2.5: -0.04882724870026586874}
E0_FLAT_25 = -0.10057723909098773851
E0_DELTA = -0.079710353767788407615
F_25 = 0.0076364765710514419711


@pytest.mark.parametrize("a", [0.5, 2.5])
def test_ground_state_oracle(a):
    states = bound_states(unit_area_symmetric(a))
    assert len(states) == 1
    assert states[0].e == pytest.approx(E0[a], abs=1e-11)


def test_delta_on_background(unit_delta):
    [s] = bound_states(unit_delta)
    assert s.e == pytest.approx(E0_DELTA, abs=1e-11)


def test_bare_delta_exact(unit_delta):
    [s] = bound_states(unit_delta, background="flat")
    assert abs(s.e + 0.25) <= 1e-12


def test_flat_square_well():
    [s] = bound_states(unit_area_symmetric(2.5), background="flat")
    assert s.e == pytest.approx(E0_FLAT_25, abs=1e-11)


def test_background_raises_the_level():
    for a in (0.5, 1.0, 2.5):
        cfg = unit_area_symmetric(a)
        assert bound_states(cfg)[0].e > bound_states(cfg, background="flat")[0].e


def test_matching_function_oracle(wide_well):
    assert matching_function(wide_well, -0.05) == pytest.approx(F_25, rel=1e-9)


def test_matching_function_domain(wide_well):
    with pytest.raises(DomainError):
        matching_function(wide_well, 0.1)
    with pytest.raises(DomainError):
        matching_function(wide_well, -0.3)
    with pytest.raises(DomainError):
        matching_function(wide_well, -0.05, background="nope")


def test_count_by_area():
    assert count_by_area(1.0, [0.5, 1.0, 2.5]) == [1, 1, 1]


def test_deep_well_node_ordering():
    states = bound_states(WellConfig(a=5.0, b=5.0, v0=2.0))
    assert len(states) == 5
    assert [s.index for s in states] == list(range(5))
    for s in states:
        assert spectra.interior_nodes(WellConfig(a=5.0, b=5.0, v0=2.0), s.e) == s.index


def test_ladder_background_agrees(narrow_well):
    exact = bound_states(narrow_well)[0].e
    ladder = bound_states(narrow_well, background="ladder", n_scan=60)[0].e
    assert ladder == pytest.approx(exact, abs=1e-6)


def test_energy_window():
    assert spectra.energy_window(delta_config(2.0)) == (-2.0, 0.0)
    assert spectra.energy_window(unit_area_symmetric(0.5)) == (-1.0, 0.0)
