import logging
import math
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from wisesim.wiring.api import DemuxConfig, AnalogErrorParams, DemuxCapacityError

logger = logging.getLogger(__name__)


class ChargingSchedule:
    """
    One charging cycle of the shim demultiplexers. Every DAC steps its M-way switch through
    outputs 1..M-1, charging one shim capacitor per slot of length t_ec; output 0 disconnects all
    electrodes and is where the clock pauses while the next operation layer runs.
    """

    def __init__(self, cfg: DemuxConfig, n_shims: int, n_dacs: int, assignments: pd.DataFrame):
        self.cfg = cfg
        self.n_shims = n_shims
        self.n_dacs = n_dacs
        self.assignments = assignments

    def get_config(self) -> DemuxConfig:
        return self.cfg

    def get_shim_count(self) -> int:
        return self.n_shims

    def get_dac_count(self) -> int:
        return self.n_dacs

    def get_assignments(self) -> pd.DataFrame:
        return self.assignments

    def get_cycle_time(self) -> float:
        return self.cfg.get_charge_cycle_time()

    def get_pause_slot(self) -> int:
        return 0

    def get_pause_time(self) -> float:
        """
        Offset in the cycle at which the select register wraps to the all-off output.
        """
        return self.cfg.get_charge_cycle_time()

    def slots_for(self, dac: int) -> pd.DataFrame:
        return self.assignments[self.assignments['dac'] == dac]

    def summary(self) -> dict:
        return {
            'order': self.cfg.get_order(),
            'register_bits': self.cfg.get_register_bits(),
            'n_shims': self.n_shims,
            'n_dacs': self.n_dacs,
            't_ec_s': self.cfg.get_t_ec(),
            't_sc_s': self.get_cycle_time(),
            'pause_slot': self.get_pause_slot()
        }


def demux_schedule(cfg: DemuxConfig, n_shims: int, n_dacs: Optional[int] = None) -> ChargingSchedule:
    """
    Assigns shim s to DAC s // (M - 1) and output slot s % (M - 1) + 1. With n_dacs unset the
    minimal DAC count ceil(n_shims / (M - 1)) is used.
    """
    if n_shims < 0:
        raise ValueError(f'shim count must be non-negative: {n_shims}')
    capacity = cfg.get_capacity_per_dac()
    needed = cfg.get_shim_dac_count(n_shims)
    if n_dacs is None:
        n_dacs = needed
    elif n_dacs * capacity < n_shims:
        raise DemuxCapacityError(f'{n_dacs} DACs at M={cfg.get_order()} serve at most {n_dacs * capacity} shims, '
                                 f'{n_shims} requested')

    shims = np.arange(n_shims)
    dacs, slots = np.divmod(shims, capacity)
    slots = slots + 1
    assignments = pd.DataFrame({
        'shim': shims,
        'dac': dacs,
        'slot': slots,
        'start_s': slots * cfg.get_t_ec(),
        'end_s': (slots + 1) * cfg.get_t_ec()
    })
    logger.debug(f'{cfg}: {n_shims} shims over {n_dacs} DACs, cycle {cfg.get_charge_cycle_time() * 1e6:g} us')
    return ChargingSchedule(cfg, n_shims, n_dacs, assignments)


def analog_errors(params: AnalogErrorParams, cfg: DemuxConfig, t_r: float, t_2q: float) -> dict:
    """
    Voltage errors of the shim capacitors: RF pickup through the shim-RF capacitance, the field
    step from transistor charge injection, and discharge drift over a reconfiguration and over a
    two-qubit gate together with the resulting gate error.
    """
    if t_r < 0 or t_2q < 0:
        raise ValueError(f'durations must be non-negative: t_r={t_r}, t_2q={t_2q}')
    capacitance = cfg.get_capacitance()
    drift_reconfig = params.get_shim_field() * -math.expm1(-t_r / params.get_tau())
    drift_gate = params.get_shim_field() * -math.expm1(-t_2q / params.get_tau())
    df = params.get_df_de() * drift_gate
    return {
        'rf_pickup_V': params.get_rf_voltage() * params.get_shim_rf_capacitance() / capacitance,
        'charge_injection_field': params.get_shim_field() * params.get_transistor_capacitance() / capacitance,
        'drift_reconfig': drift_reconfig,
        'drift_gate': drift_gate,
        'df': df,
        'gate_error': df ** 2 * t_2q ** 2
    }


def demux_tradeoff(n_shims: int, orders: Iterable[int], t_ec: float) -> pd.DataFrame:
    """
    Shim DAC count against charging time for a range of multiplexing orders.
    """
    rows = []
    for order in orders:
        cfg = DemuxConfig(order, t_ec)
        rows.append({
            'M': order,
            'L': cfg.get_register_bits(),
            'N_sDAC': cfg.get_shim_dac_count(n_shims),
            't_sc_s': cfg.get_charge_cycle_time()
        })
    return pd.DataFrame(rows, columns=['M', 'L', 'N_sDAC', 't_sc_s'])
