import numpy as np
import pytest
from hypothesis import given, strategies as st

from wisesim.routing.api import SwapPhase, SwapStep
from wisesim.topology.api import TrapLayout, ElectrodeCounts
from wisesim.topology.layout import build_layout, linear_layout
from wisesim.wiring.api import SelectWord, SwitchMode, SwitchNetworkConfig, DemuxConfig
from wisesim.wiring.switch import encode_select, decode_select, streaming_time, required_rate, max_zones_per_link, \
    is_streaming_hidden, switch_budget, push_directions


def test_select_word_bit_order():
    word = SelectWord(np.array([1, 1, 0, 0, 1, 1, 1, 1], dtype=bool))
    assert 0xF3 == word.to_int()
    assert '11001111' == word.to_bitstring()
    assert 'f3' == word.to_hex()
    assert b'\xf3' == word.to_bytes()
    assert 6 == word.get_active_count()
    assert word == SelectWord.from_int(0xF3, 8)


def test_zero_word_and_padding():
    word = SelectWord(np.zeros(10, dtype=bool))
    assert 0 == word.to_int()
    assert '000' == word.to_hex()
    assert b'\x00\x00' == word.to_bytes()
    with pytest.raises(ValueError):
        SelectWord.from_bytes(b'\x00\x04', 10)
    with pytest.raises(ValueError):
        SelectWord.from_bytes(b'\x00', 10)
    with pytest.raises(ValueError):
        SelectWord.from_int(1 << 10, 10)


@given(st.lists(st.booleans(), min_size=1, max_size=200))
def test_select_word_round_trip(bits):
    layout = linear_layout(len(bits))
    step = SwapStep(SwapPhase.ODD_HORIZONTAL, np.array(bits, dtype=bool))
    word = encode_select(step)
    assert bits == decode_select(word, layout).tolist()
    assert word == SelectWord.from_bytes(word.to_bytes(), len(bits))
    assert word == SelectWord.from_hex(word.to_hex(), len(bits))


def test_decode_checks_length():
    with pytest.raises(ValueError):
        decode_select(SelectWord(np.zeros(4, dtype=bool)), linear_layout(5))


def test_streaming():
    assert pytest.approx(20.52e-6) == streaming_time(1026, 50e6)
    assert 0 == streaming_time(0, 50e6)
    assert pytest.approx(1e7) == required_rate(1000, 100e-6)
    assert 5000 == max_zones_per_link(50e6, 100e-6)
    assert is_streaming_hidden(1026, 50e6, 100e-6)
    assert not is_streaming_hidden(6000, 50e6, 100e-6)
    with pytest.raises(ValueError):
        streaming_time(10, 0)


def test_switch_modes():
    assert SwitchMode.PER_ELECTRODE == SwitchMode.parse('PerElectrode')
    assert SwitchMode.SINGLE_PER_ZONE == SwitchMode.parse('SinglePerZone')
    with pytest.raises(ValueError):
        SwitchMode.parse('PerZone')


def test_reference_switch_budget():
    budget = switch_budget(build_layout(1000, 6), SwitchNetworkConfig(), DemuxConfig())
    assert 11970 == budget.n_dynamic_electrodes
    assert 10260 == budget.n_shim_electrodes
    assert 34200 == budget.n_transmission_gates
    assert 120 == budget.n_dynamic_dacs
    assert 81 == budget.n_shim_dacs
    assert 0 == budget.n_rail_sources
    assert pytest.approx(85.5e-6) == budget.gate_area_total
    assert pytest.approx(102.6e-6) == budget.capacitor_area_total
    assert pytest.approx(164.16e-6) == budget.active_area
    assert 16 == budget.max_shims_per_zone
    assert budget.footprint_ok

    frame = budget.to_frame().set_index('quantity')
    assert 85.5 == frame.loc['gate_area_total_m2', 'display']
    assert 102.5 == frame.loc['capacitor_area_total_m2', 'display']


def test_single_per_zone_budget():
    cfg = SwitchNetworkConfig(SwitchMode.SINGLE_PER_ZONE)
    budget = switch_budget(build_layout(1000, 6), cfg, DemuxConfig())
    assert 11286 == budget.n_transmission_gates
    assert 2 == budget.n_rail_sources
    assert 'SINGLE_PER_ZONE' == budget.to_dict()['mode']


def test_budget_without_shims():
    layout = TrapLayout(12, 2, 6, ElectrodeCounts(10, 20, 0))
    budget = switch_budget(layout, SwitchNetworkConfig(), DemuxConfig())
    assert 0 == budget.n_shim_electrodes
    assert 0 == budget.n_shim_dacs
    assert 0 == budget.capacitor_area_total


def test_overfull_zone_footprint():
    layout = TrapLayout(6, 1, 6, ElectrodeCounts(10, 20, 20))
    assert not switch_budget(layout, SwitchNetworkConfig(), DemuxConfig()).footprint_ok


def test_push_directions():
    layout = linear_layout(4)
    step = SwapStep(SwapPhase.ODD_HORIZONTAL, np.array([1, 1, 0, 0], dtype=bool))
    assert [1, -1, -1, 1] == push_directions(layout, step).tolist()

    step = SwapStep(SwapPhase.EVEN_HORIZONTAL, np.array([0, 1, 1, 0], dtype=bool))
    assert [0, 1, -1, 0] == push_directions(layout, step).tolist()
