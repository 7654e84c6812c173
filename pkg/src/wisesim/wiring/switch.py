import logging
import math

import numpy as np
import pandas as pd

from wisesim.routing.api import SwapStep
from wisesim.routing.executor import candidate_pairs
from wisesim.topology.api import TrapLayout
from wisesim.wiring.api import SelectWord, SwitchNetworkConfig, SwitchMode, DemuxConfig

logger = logging.getLogger(__name__)

MM2 = 1e-6


def encode_select(step: SwapStep) -> SelectWord:
    return SelectWord(step.get_active())


def decode_select(word: SelectWord, layout: TrapLayout) -> np.ndarray:
    if word.get_length() != layout.get_zone_count():
        raise ValueError(f'{word.get_length()}-bit select word does not match {layout.get_zone_count()} zones')
    return word.get_bits().copy()


def streaming_time(word_length: int, link_rate: float) -> float:
    """
    Time to shift a select word of the given bit length over a serial link of link_rate bit/s.
    """
    if link_rate <= 0:
        raise ValueError(f'link rate must be positive: {link_rate}')
    return word_length / link_rate


def required_rate(n_zones: int, t_0: float) -> float:
    return n_zones / t_0


def max_zones_per_link(link_rate: float, t_0: float) -> int:
    return int(math.floor(link_rate * t_0 + 1e-9))


def is_streaming_hidden(word_length: int, link_rate: float, t_0: float) -> bool:
    """
    Whether the next select word can be streamed while the current swap step runs.
    """
    return streaming_time(word_length, link_rate) <= t_0


def dynamic_electrode_count(layout: TrapLayout) -> int:
    electrodes = layout.get_electrodes()
    return layout.get_gate_count() * electrodes.get_n_de_gz() + layout.get_junction_count() * electrodes.get_n_de_jz()


def shim_electrode_count(layout: TrapLayout) -> int:
    return layout.get_zone_count() * layout.get_electrodes().get_n_se_z()


def dynamic_dac_count(layout: TrapLayout, cfg: SwitchNetworkConfig) -> int:
    electrodes = layout.get_electrodes()
    return 2 * cfg.get_n_settings() * (electrodes.get_n_de_gz() + electrodes.get_n_de_jz())


def transmission_gate_count(layout: TrapLayout, cfg: SwitchNetworkConfig) -> int:
    n_se = shim_electrode_count(layout)
    if cfg.get_mode() == SwitchMode.SINGLE_PER_ZONE:
        return layout.get_zone_count() + n_se
    return cfg.get_gates_per_dynamic() * dynamic_electrode_count(layout) + cfg.get_gates_per_shim() * n_se


def max_shims_per_zone(layout: TrapLayout, demux: DemuxConfig) -> int:
    return int(math.floor(layout.get_geometry().get_zone_area() / demux.get_capacitor_area() + 1e-9))


class SwitchBudget:
    """
    Component counts and silicon areas of the switch and shim networks. Areas are in m^2.
    """

    def __init__(self, layout: TrapLayout, cfg: SwitchNetworkConfig, demux: DemuxConfig):
        geometry = layout.get_geometry()
        self.mode = cfg.get_mode()
        self.n_dynamic_electrodes = dynamic_electrode_count(layout)
        self.n_shim_electrodes = shim_electrode_count(layout)
        self.n_transmission_gates = transmission_gate_count(layout, cfg)
        self.n_dynamic_dacs = dynamic_dac_count(layout, cfg)
        self.n_rail_sources = cfg.get_rail_sources()
        self.n_shim_dacs = demux.get_shim_dac_count(self.n_shim_electrodes)
        self.gate_area_total = self.n_transmission_gates * cfg.get_gate_area()
        self.capacitor_area_total = self.n_shim_electrodes * demux.get_capacitor_area()
        self.active_area = layout.get_m() * geometry.get_zone_x() * layout.get_n() * geometry.get_zone_y()
        self.max_shims_per_zone = max_shims_per_zone(layout, demux)
        self.footprint_ok = layout.get_electrodes().get_n_se_z() * demux.get_capacitor_area() \
            <= geometry.get_zone_area()

    def to_dict(self) -> dict:
        return {
            'mode': self.mode.name,
            'n_dynamic_electrodes': self.n_dynamic_electrodes,
            'n_shim_electrodes': self.n_shim_electrodes,
            'n_transmission_gates': self.n_transmission_gates,
            'n_dynamic_dacs': self.n_dynamic_dacs,
            'n_rail_sources': self.n_rail_sources,
            'n_shim_dacs': self.n_shim_dacs,
            'gate_area_total_m2': self.gate_area_total,
            'capacitor_area_total_m2': self.capacitor_area_total,
            'active_area_m2': self.active_area,
            'max_shims_per_zone': self.max_shims_per_zone,
            'footprint_ok': self.footprint_ok
        }

    def to_frame(self) -> pd.DataFrame:
        """
        Report table with areas shown in mm^2, rounded to the nearest 0.5 mm^2.
        """
        rows = []
        for name, value in self.to_dict().items():
            display = value
            if name.endswith('_m2'):
                display = round(value / MM2 * 2) / 2
            rows.append({'quantity': name, 'value': value, 'display': display})
        return pd.DataFrame(rows, columns=['quantity', 'value', 'display'])


def switch_budget(layout: TrapLayout, cfg: SwitchNetworkConfig, demux: DemuxConfig) -> SwitchBudget:
    budget = SwitchBudget(layout, cfg, demux)
    logger.info(f'switch budget for {layout}: {budget.n_transmission_gates} transmission gates, '
                f'{budget.gate_area_total / MM2:.1f} mm^2 gates, '
                f'{budget.capacitor_area_total / MM2:.1f} mm^2 capacitors')
    return budget


def push_directions(layout: TrapLayout, step: SwapStep) -> np.ndarray:
    """
    Well shift of the single switched electrode in every zone for one step, as the sign along the
    step's axis: an active zone pushes its ion towards its partner into the swap well, an inactive
    zone pushes away from the zone it would pair with into the stationary well. Zones with no
    candidate partner in this phase get 0.
    """
    pairs = candidate_pairs(layout, step.get_phase())
    active = step.get_active()
    directions = np.zeros(layout.get_zone_count(), dtype=np.int8)
    lower, upper = pairs[:, 0], pairs[:, 1]
    selected = active[lower] & active[upper]
    directions[lower] = np.where(selected, 1, -1)
    directions[upper] = np.where(selected, -1, 1)
    return directions
