import logging
import math
from typing import Iterable, Optional

import dask
import pandas as pd

from wisesim.params.api import BaseInputs, SystemParams, MemoryErrorModel, ParamsError, FIELDS
from wisesim.topology.api import TrapLayout, ElectrodeCounts, ZoneGeometry, LayoutError
from wisesim.topology.layout import build_layout
from wisesim.wiring.api import SwitchNetworkConfig, DemuxConfig, AnalogErrorParams
from wisesim.wiring.demux import analog_errors
from wisesim.wiring.switch import dynamic_electrode_count, shim_electrode_count, dynamic_dac_count, \
    transmission_gate_count, streaming_time

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ['N', 'k', 'm', 'n', 'steps', 't_r_s', 'mem_error']


def layout_for(base: BaseInputs) -> TrapLayout:
    electrodes = ElectrodeCounts(base.n_de_gz, base.n_de_jz, base.n_se_z)
    geometry = ZoneGeometry(base.zone_x, base.zone_y, base.ion_height)
    try:
        if base.m is not None:
            return TrapLayout(base.m, base.n, base.k, electrodes, geometry)
        return build_layout(base.n_qubits, base.k, electrodes, geometry)
    except LayoutError as error:
        raise ParamsError(f'inconsistent layout inputs: {error}')


def reconfig_time(layout: TrapLayout, t_0: float) -> dict:
    """
    Worst-case reconfiguration time 2m + kn steps of t_0 each, next to the continuous estimate
    sqrt(8 k N) steps for the same zone count.
    """
    steps = 2 * layout.get_m() + layout.get_k() * layout.get_n()
    estimate = math.sqrt(8 * layout.get_k() * layout.get_zone_count())
    return {
        'steps': steps,
        'seconds': steps * t_0,
        'estimate_steps': estimate,
        'estimate_seconds': estimate * t_0
    }


def memory_error(model: MemoryErrorModel, t: float) -> float:
    return model.error_at(t)


def system_speed(p: SystemParams, t_r: Optional[float] = None) -> dict:
    """
    Circuit layers per second: the fastest rate runs only single-qubit transport-assisted layers,
    the slowest pays a full reconfiguration plus a two-qubit layer each time.
    """
    t_r = p.t_r if t_r is None else t_r
    fastest = p.t_sc + p.t_1q
    slowest = t_r + p.t_2q + p.t_sc
    if fastest < 0 or slowest < 0:
        raise ParamsError(f'layer times must be non-negative: {fastest}, {slowest}')
    return {
        'max_layers_per_s': math.inf if fastest == 0 else 1.0 / fastest,
        'min_layers_per_s': math.inf if slowest == 0 else 1.0 / slowest,
        'max_unbounded': fastest == 0,
        'min_unbounded': slowest == 0
    }


def shim_overhead(n_layers: int, t_sc: float, t_r: float) -> float:
    """
    Fraction of a reconfiguration period spent charging shims for n_layers gate layers.
    """
    if n_layers < 0 or t_sc < 0:
        raise ParamsError(f'layer count and charging time must be non-negative: {n_layers}, {t_sc}')
    if t_r <= 0:
        raise ParamsError(f'reconfiguration time must be positive: {t_r}')
    return n_layers * t_sc / t_r


def io_budget(p: SystemParams, aux_lines: int = 10) -> dict:
    if aux_lines < 0:
        raise ParamsError(f'aux line count must be non-negative: {aux_lines}')
    return {
        'n_ddac': p.n_ddac,
        'n_sdac': p.n_sdac,
        'aux': aux_lines,
        'total': p.n_ddac + p.n_sdac + aux_lines
    }


def derive(base: BaseInputs) -> SystemParams:
    layout = layout_for(base)
    switch = SwitchNetworkConfig(base.switch_mode, base.n_settings, base.tg_per_de, base.tg_per_se, base.tg_side)
    demux = DemuxConfig(base.demux_order, base.t_ec, base.cap_density, base.cap_side)
    analog = AnalogErrorParams(base.rf_voltage, base.shim_rf_capacitance, base.transistor_capacitance,
                               base.shim_field, base.tau, base.df_de)

    n_zones = layout.get_zone_count()
    n_de = dynamic_electrode_count(layout)
    n_se = shim_electrode_count(layout)
    n_tg = transmission_gate_count(layout, switch)
    reconfig = reconfig_time(layout, base.t_0)
    errors = analog_errors(analog, demux, reconfig['seconds'], base.t_2q)
    t_sc = demux.get_charge_cycle_time()

    values = {
        'n_qubits': n_zones,
        'k': layout.get_k(),
        'm': layout.get_m(),
        'n': layout.get_n(),
        'n_jz': layout.get_junction_count(),
        'n_gz': layout.get_gate_count(),
        'n_de_gz': base.n_de_gz,
        'n_de_jz': base.n_de_jz,
        'n_se_z': base.n_se_z,
        'n_de': n_de,
        'n_se': n_se,
        'n_e': n_de + n_se,
        'ion_height': base.ion_height,
        'zone_x': base.zone_x,
        'zone_y': base.zone_y,
        'chip_x': layout.get_m() * base.zone_x,
        'chip_y': layout.get_n() * base.zone_y,
        'area_total': layout.get_m() * base.zone_x * layout.get_n() * base.zone_y,
        'cap_density': base.cap_density,
        'cap_area': demux.get_capacitor_area(),
        'cap_area_total': n_se * demux.get_capacitor_area(),
        'capacitance': demux.get_capacitance(),
        'rf_voltage': base.rf_voltage,
        'shim_rf_capacitance': base.shim_rf_capacitance,
        'rf_pickup': errors['rf_pickup_V'],
        'n_settings': base.n_settings,
        'n_ddac': dynamic_dac_count(layout, switch),
        'demux_order': base.demux_order,
        'n_sdac': demux.get_shim_dac_count(n_se),
        'n_sw': n_zones,
        'link_rate': base.link_rate,
        't_ss': streaming_time(n_zones, base.link_rate),
        'tg_per_de': base.tg_per_de,
        'tg_per_se': base.tg_per_se,
        'n_tg': n_tg,
        'tg_area': switch.get_gate_area(),
        'tg_area_total': n_tg * switch.get_gate_area(),
        't_ec': base.t_ec,
        't_sc': t_sc,
        't_0': base.t_0,
        'reconfig_steps': reconfig['steps'],
        't_r': reconfig['seconds'],
        'transistor_capacitance': base.transistor_capacitance,
        'shim_field': base.shim_field,
        'charge_injection_field': errors['charge_injection_field'],
        'tau': base.tau,
        'drift_reconfig': errors['drift_reconfig'],
        'drift_gate': errors['drift_gate'],
        't_1q': base.t_1q,
        't_2q': base.t_2q,
        't_tag_1q': t_sc + base.t_1q,
        't_tag_2q': t_sc + base.t_2q,
        'max_speed': None,
        'min_speed': None
    }
    p = SystemParams(base, values)
    speed = system_speed(p)
    p.values['max_speed'] = speed['max_layers_per_s']
    p.values['min_speed'] = speed['min_layers_per_s']
    logger.debug(f'derived parameters for {layout}: t_r={p.t_r * 1e3:.1f} ms, N_tg={p.n_tg}, N_sDAC={p.n_sdac}')
    return p


def table_report(p: SystemParams) -> pd.DataFrame:
    rows = []
    for field in FIELDS:
        value = p.get(field.name)
        rows.append({
            'quantity': field.quantity,
            'symbol': field.symbol,
            'value': value,
            'unit': field.unit,
            'display': field.display(value)
        })
    return pd.DataFrame(rows, columns=['quantity', 'symbol', 'value', 'unit', 'display'])


def _sweep_cell(n_qubits: int, k: int, t_0: float, model: MemoryErrorModel) -> dict:
    layout = build_layout(n_qubits, k)
    reconfig = reconfig_time(layout, t_0)
    return {
        'N': n_qubits,
        'k': k,
        'm': layout.get_m(),
        'n': layout.get_n(),
        'steps': reconfig['steps'],
        't_r_s': reconfig['seconds'],
        'mem_error': model.error_at(reconfig['seconds'])
    }


def sweep_reconfig(k_values: Iterable[int], n_values: Iterable[int], t_0: float, model: MemoryErrorModel,
                   workers: Optional[int] = None) -> pd.DataFrame:
    """
    Worst-case reconfiguration time and memory error over a grid of qubit counts and qubits per
    junction, one optimized layout per cell. Cells are computed on a thread pool.
    """
    k_values = list(k_values)
    n_values = list(n_values)
    if not k_values or not n_values:
        raise ParamsError('sweep needs at least one k and one N value')
    if t_0 <= 0:
        raise ParamsError(f'swap time must be positive: {t_0}')
    cells = [dask.delayed(_sweep_cell)(n_qubits, k, t_0, model) for n_qubits in n_values for k in k_values]
    try:
        rows = dask.compute(*cells, scheduler='threads', num_workers=workers)
    except LayoutError as error:
        raise ParamsError(f'invalid sweep point: {error}')
    logger.info(f'swept {len(rows)} layouts over N={n_values} and k={k_values}')
    return pd.DataFrame(list(rows), columns=SWEEP_COLUMNS)
