import math

import pytest
from hypothesis import given, settings, strategies as st

from wisesim.wiring.api import DemuxConfig, AnalogErrorParams, DemuxCapacityError
from wisesim.wiring.demux import demux_schedule, analog_errors, demux_tradeoff


def test_reference_charging_cycle():
    cfg = DemuxConfig(128, 3e-6)
    assert 7 == cfg.get_register_bits()
    assert pytest.approx(384e-6) == cfg.get_charge_cycle_time()
    assert 81 == cfg.get_shim_dac_count(10260)
    schedule = demux_schedule(cfg, 10260)
    assert 81 == schedule.get_dac_count()
    assert 0 == schedule.get_pause_slot()
    assert pytest.approx(384e-6) == schedule.get_pause_time()
    summary = schedule.summary()
    assert 10260 == summary['n_shims']
    assert pytest.approx(384e-6) == summary['t_sc_s']


def test_every_shim_charged_once():
    cfg = DemuxConfig(16, 3e-6)
    schedule = demux_schedule(cfg, 100)
    assignments = schedule.get_assignments()
    assert list(range(100)) == sorted(assignments['shim'].tolist())
    assert 1 == assignments['slot'].min()
    assert 15 == assignments['slot'].max()
    assert not assignments.duplicated(['dac', 'slot']).any()
    assert 7 == schedule.get_dac_count()
    assert 15 == len(schedule.slots_for(0))
    assert (assignments['end_s'] <= cfg.get_charge_cycle_time() + 1e-12).all()


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=5000), st.integers(min_value=1, max_value=6), st.integers(0, 3))
def test_any_shim_count_charged_once_per_cycle(n_shims: int, register_bits: int, spare_dacs: int):
    order = 2 ** register_bits
    cfg = DemuxConfig(order, 3e-6)
    minimal = math.ceil(n_shims / (order - 1))
    schedule = demux_schedule(cfg, n_shims, n_dacs=minimal + spare_dacs)
    assignments = schedule.get_assignments()

    assert minimal == demux_schedule(cfg, n_shims).get_dac_count()
    assert list(range(n_shims)) == sorted(assignments['shim'].tolist())
    assert not assignments.duplicated(['dac', 'slot']).any()
    if n_shims > 0:
        assert 1 == assignments['slot'].min()
        assert order - 1 >= assignments['slot'].max()
        assert (assignments.groupby('dac').size() <= order - 1).all()
        assert 1 == math.ceil(n_shims / (schedule.get_dac_count() * (order - 1)))
    assert (assignments['end_s'] <= cfg.get_charge_cycle_time() + 1e-12).all()


def test_smallest_demux():
    schedule = demux_schedule(DemuxConfig(2, 3e-6), 1)
    assert 1 == schedule.get_dac_count()
    assert [1] == schedule.get_assignments()['slot'].tolist()
    assert pytest.approx(6e-6) == schedule.get_cycle_time()


def test_capacity_exceeded():
    with pytest.raises(DemuxCapacityError):
        demux_schedule(DemuxConfig(128, 3e-6), 10260, n_dacs=80)
    assert 90 == demux_schedule(DemuxConfig(128, 3e-6), 10260, n_dacs=90).get_dac_count()


def test_invalid_order():
    with pytest.raises(ValueError):
        DemuxConfig(100, 3e-6)
    with pytest.raises(ValueError):
        DemuxConfig(1, 3e-6)


def test_reference_analog_errors():
    errors = analog_errors(AnalogErrorParams(), DemuxConfig(), 22e-3, 100e-6)
    assert pytest.approx(3.333e-3, rel=1e-3) == errors['rf_pickup_V']
    assert pytest.approx(0.2) == errors['charge_injection_field']
    assert pytest.approx(24.44e-3, rel=1e-3) == errors['drift_reconfig']
    assert pytest.approx(0.1111e-3, rel=1e-3) == errors['drift_gate']
    assert pytest.approx(0.1111, rel=1e-3) == errors['df']
    assert pytest.approx(1.234e-10, rel=1e-3) == errors['gate_error']


def test_larger_capacitor_lowers_pickup():
    small = analog_errors(AnalogErrorParams(), DemuxConfig(cap_side=100e-6), 22e-3, 100e-6)
    large = analog_errors(AnalogErrorParams(), DemuxConfig(cap_side=200e-6), 22e-3, 100e-6)
    assert large['rf_pickup_V'] < small['rf_pickup_V']
    assert large['charge_injection_field'] < small['charge_injection_field']


def test_analog_params_must_be_positive():
    with pytest.raises(ValueError):
        AnalogErrorParams(tau=0)
    with pytest.raises(ValueError):
        analog_errors(AnalogErrorParams(), DemuxConfig(), -1.0, 100e-6)


def test_tradeoff():
    frame = demux_tradeoff(10260, [2, 16, 128, 1024], 3e-6)
    assert [1, 4, 7, 10] == frame['L'].tolist()
    assert [10260, 684, 81, 11] == frame['N_sDAC'].tolist()
    assert pytest.approx([6e-6, 48e-6, 384e-6, 3072e-6]) == frame['t_sc_s'].tolist()
