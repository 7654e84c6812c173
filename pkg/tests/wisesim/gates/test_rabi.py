import math

import pytest
from hypothesis import given, strategies as st

from wisesim.gates.api import RabiProfile, GateCompileError
from wisesim.gates.rabi import rabi_at, solve_displacement

WAIST = 10e-6
OMEGA0 = 2 * math.pi * 1e6


def test_microwave_profile():
    profile = RabiProfile.microwave(2.5e9)
    assert 0 == rabi_at(profile, 0.0)
    assert pytest.approx(2.5e3) == rabi_at(profile, 1e-6)
    assert 0 == solve_displacement(profile, 0.0)
    assert pytest.approx(1e-6) == solve_displacement(profile, 2.5e3)
    assert 0 == profile.get_operating_point()


def test_gaussian_profile():
    profile = RabiProfile.laser(OMEGA0, WAIST)
    assert pytest.approx(OMEGA0) == rabi_at(profile, 0.0)
    assert pytest.approx(OMEGA0 * math.exp(-0.5)) == rabi_at(profile, profile.get_operating_point())
    assert rabi_at(profile, 10 * WAIST) < OMEGA0 * math.exp(-99)
    assert 0 == solve_displacement(profile, OMEGA0)
    assert pytest.approx(WAIST * math.sqrt(math.log(2))) == solve_displacement(profile, OMEGA0 / 2)


def test_unreachable_rabi_frequency():
    profile = RabiProfile.laser(OMEGA0, WAIST)
    with pytest.raises(GateCompileError):
        solve_displacement(profile, 2 * OMEGA0)
    with pytest.raises(GateCompileError):
        solve_displacement(profile, 0.0)


def test_invalid_profiles():
    with pytest.raises(ValueError):
        RabiProfile.microwave(0.0)
    with pytest.raises(ValueError):
        RabiProfile.laser(OMEGA0, 0.0)
    with pytest.raises(ValueError):
        rabi_at(RabiProfile.microwave(1.0), math.inf)


@given(st.floats(min_value=1e-6, max_value=1.0))
def test_gaussian_round_trip(fraction: float):
    profile = RabiProfile.laser(OMEGA0, WAIST)
    target = fraction * OMEGA0
    assert pytest.approx(target, rel=1e-9) == rabi_at(profile, solve_displacement(profile, target))
