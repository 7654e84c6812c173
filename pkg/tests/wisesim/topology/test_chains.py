import pytest

from wisesim.topology.api import TrapLayout, ChainMode, LayoutError, ConfigMismatchError, QubitConfig
from wisesim.topology.chains import chain_slots, chained_config, split_config, merge_config, chain_zones


def test_chained_config_odd_k():
    layout = TrapLayout(6, 2, 3)
    config = chained_config(layout, list(range(12)))
    assert ChainMode.CHAINED == config.get_chain_mode()
    assert (0, 1) == config.get_zone(layout.zone_index(1, 0))
    assert (2,) == config.get_zone(layout.zone_index(2, 0))
    assert (3, 4) == config.get_zone(layout.zone_index(4, 0))
    assert (5,) == config.get_zone(layout.zone_index(5, 0))
    assert (6, 7) == config.get_zone(layout.zone_index(1, 1))
    assert (11,) == config.get_zone(layout.zone_index(5, 1))
    assert () == config.get_zone(layout.zone_index(3, 1))


def test_chained_config_even_k():
    layout = TrapLayout(4, 1, 4)
    config = chained_config(layout, [7, 6, 5, 4])
    assert [(), (7, 6), (), (5, 4)] == list(config.get_occupancy())
    assert [1, 3] == chain_zones(config)
    assert [1, 3] == chain_slots(layout)


def test_split_and_merge():
    layout = TrapLayout(6, 2, 3)
    config = chained_config(layout, list(range(12)))
    split = split_config(config)
    assert ChainMode.SPLIT == split.get_chain_mode()
    assert split.is_full()
    assert (0,) == split.get_zone(layout.zone_index(0, 0))
    assert (1,) == split.get_zone(layout.zone_index(1, 0))
    assert (2,) == split.get_zone(layout.zone_index(2, 0))
    assert config == merge_config(split, chain_zones(config))


def test_split_needs_chained_mode():
    layout = TrapLayout(4, 1, 2)
    config = QubitConfig.from_sequence(layout, [0, 1, 2, 3])
    with pytest.raises(ConfigMismatchError):
        split_config(config)
    with pytest.raises(ConfigMismatchError):
        merge_config(chained_config(layout, [0, 1, 2, 3]), [1])


def test_merge_rejects_non_slot():
    layout = TrapLayout(4, 1, 2)
    config = QubitConfig.from_sequence(layout, [0, 1, 2, 3])
    with pytest.raises(ConfigMismatchError):
        merge_config(config, [2])
    sparse = QubitConfig.from_sequence(layout, [-1, 1, 2, 3])
    with pytest.raises(ConfigMismatchError):
        merge_config(sparse, [1])


def test_chains_need_gate_zones():
    layout = TrapLayout(4, 2, 1)
    with pytest.raises(LayoutError):
        chained_config(layout, list(range(8)))
    with pytest.raises(LayoutError):
        chain_slots(layout)
    with pytest.raises(ConfigMismatchError):
        chained_config(TrapLayout(4, 2, 2), list(range(7)))
