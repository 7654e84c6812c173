import copy
import hashlib
import json
import logging
import math
from pathlib import Path
from typing import Optional

import toml
import yaml

from wisesim.gates.api import GateMode, RabiProfile
from wisesim.params.api import BaseInputs, MemoryErrorModel, MemoryErrorForm
from wisesim.topology.api import TrapLayout, LayoutError
from wisesim.topology.layout import layout_from_config
from wisesim.utils import get_global_defaults, Environment
from wisesim.wiring.api import SwitchMode, SwitchNetworkConfig, DemuxConfig, AnalogErrorParams

ENUM_VALUES = {
    ('switch', 'mode'): ('PerElectrode', 'SinglePerZone'),
    ('memory', 'form'): ('Linear', 'Quadratic'),
    ('gates', 'mode'): ('demux', 'parallelization'),
    ('gates', 'profile'): ('laser', 'microwave')
}

NON_NEGATIVE = {
    ('layout', 'n_de_gz'), ('layout', 'n_de_jz'), ('layout', 'n_se_z'), ('switch', 'tg_per_de'),
    ('switch', 'tg_per_se'), ('timing', 't1q_us'), ('timing', 't2q_us'), ('budget', 'aux_lines'),
    ('gates', 'layers_per_reconfig'), ('run', 'seed'), ('memory', 'anchor_error')
}


class ConfigError(ValueError):
    pass


class RunConfig:
    """
    Effective run configuration: packaged defaults, overlaid by an optional toml or yaml file,
    overlaid by WISESIM_<SECTION>_<KEY> environment variables.
    """

    logger = logging.getLogger(__name__)

    @staticmethod
    def load(config_path: Optional[str] = None, env: Optional[Environment] = None) -> 'RunConfig':
        values = copy.deepcopy(get_global_defaults())
        if config_path is not None:
            RunConfig._overlay(values, RunConfig._read_file(Path(config_path)), str(config_path))
        RunConfig._apply_env(values, env if env is not None else Environment())
        return RunConfig(values)

    @staticmethod
    def _read_file(path: Path) -> dict:
        if not path.exists():
            raise ConfigError(f'config file does not exist: {path}')
        try:
            with path.open('r') as config_file:
                if path.suffix in ('.yaml', '.yml'):
                    loaded = yaml.safe_load(config_file)
                else:
                    loaded = toml.load(config_file)
        except (yaml.YAMLError, toml.TomlDecodeError) as error:
            raise ConfigError(f'cannot parse {path}: {error}')
        if loaded is None:
            return {}
        if not isinstance(loaded, dict):
            raise ConfigError(f'{path} must contain sections of key/value pairs')
        return loaded

    @staticmethod
    def _overlay(values: dict, overrides: dict, source: str):
        for section, entries in overrides.items():
            if section not in values:
                raise ConfigError(f'{source}: unknown config section [{section}]')
            if not isinstance(entries, dict):
                raise ConfigError(f'{source}: [{section}] must be a table of key/value pairs')
            for key, value in entries.items():
                if key not in values[section]:
                    raise ConfigError(f'{source}: unknown config key {section}.{key}')
                values[section][key] = RunConfig._coerce(section, key, value, values[section][key])

    @staticmethod
    def _apply_env(values: dict, env: Environment):
        for section, entries in values.items():
            for key, default in entries.items():
                override = env.getenv(f'{section}_{key}')
                if override is not None:
                    entries[key] = RunConfig._coerce(section, key, override, default)

    @staticmethod
    def _coerce(section: str, key: str, value, default):
        try:
            if isinstance(default, bool):
                if isinstance(value, str):
                    return value.strip().lower() in ('1', 'true', 'yes', 'on')
                return bool(value)
            if isinstance(default, int):
                number = float(value)
                if number != int(number):
                    raise ValueError(f'{value} is not an integer')
                return int(number)
            if isinstance(default, float):
                return float(value)
            return str(value)
        except (TypeError, ValueError, OverflowError):
            raise ConfigError(f'{section}.{key}: cannot use {value!r} as {type(default).__name__}')

    def __init__(self, values: dict):
        self.values = values
        self._validate()

    def _validate(self):
        for section, entries in self.values.items():
            for key, value in entries.items():
                name = f'{section}.{key}'
                allowed = ENUM_VALUES.get((section, key))
                if allowed is not None:
                    if value not in allowed:
                        raise ConfigError(f'{name} must be one of {", ".join(allowed)}: {value}')
                elif isinstance(value, (int, float)):
                    if (section, key) in NON_NEGATIVE:
                        if value < 0:
                            raise ConfigError(f'{name} must be non-negative: {value}')
                    elif not value > 0:
                        raise ConfigError(f'{name} must be positive: {value}')
        order = self.get('demux', 'order')
        if order < 2 or order & (order - 1):
            raise ConfigError(f'demux.order must be a power of two >= 2: {order}')
        if self.get('layout', 'n_qubits') < 2:
            raise ConfigError(f'layout.n_qubits must be at least 2: {self.get("layout", "n_qubits")}')

    def get(self, section: str, key: str):
        try:
            return self.values[section][key]
        except KeyError:
            raise ConfigError(f'no such config value: {section}.{key}')

    def get_seed(self) -> int:
        return self.get('run', 'seed')

    def get_workers(self) -> int:
        return self.get('run', 'workers')

    def get_aux_lines(self) -> int:
        return self.get('budget', 'aux_lines')

    def get_layers_per_reconfig(self) -> int:
        return self.get('gates', 'layers_per_reconfig')

    def get_t0(self) -> float:
        return self.get('timing', 't0_us') * 1e-6

    def get_layout(self) -> TrapLayout:
        try:
            return layout_from_config(self.values['layout'])
        except LayoutError as error:
            raise ConfigError(f'layout: {error}')

    def get_switch_config(self) -> SwitchNetworkConfig:
        switch = self.values['switch']
        return SwitchNetworkConfig(SwitchMode.parse(switch['mode']), switch['n_settings'], switch['tg_per_de'],
                                   switch['tg_per_se'], switch['tg_side_um'] * 1e-6)

    def get_demux_config(self) -> DemuxConfig:
        capacitor = self.values['capacitor']
        return DemuxConfig(self.get('demux', 'order'), self.get('demux', 't_ec_us') * 1e-6,
                           capacitor['density_ff_per_um2'] * 1e-3, capacitor['side_um'] * 1e-6)

    def get_analog_params(self) -> AnalogErrorParams:
        analog = self.values['analog']
        capacitor = self.values['capacitor']
        return AnalogErrorParams(capacitor['rf_voltage_v'], capacitor['shim_rf_capacitance_ff'] * 1e-15,
                                 analog['transistor_capacitance_ff'] * 1e-15, analog['shim_field_v_m'],
                                 analog['tau_s'], analog['df_de_hz_per_v_m'])

    def get_memory_model(self) -> MemoryErrorModel:
        memory = self.values['memory']
        return MemoryErrorModel(MemoryErrorForm.parse(memory['form']), anchor_t=memory['anchor_t_ms'] * 1e-3,
                                anchor_error=memory['anchor_error'])

    def get_gate_mode(self) -> GateMode:
        return GateMode.parse(self.get('gates', 'mode'))

    def get_detuning(self) -> float:
        """
        Drive detuning of SQ_Z layers in rad/s.
        """
        return 2 * math.pi * self.get('gates', 'detuning_hz')

    def get_rabi_profile(self) -> RabiProfile:
        """
        Position-dependent Rabi frequency with its peak at 2 pi / t_1q; the microwave gradient
        reaches that peak one waist away from the field null.
        """
        t_1q = self.get('timing', 't1q_us') * 1e-6
        if t_1q <= 0:
            raise ConfigError('timing.t1q_us must be positive to set a Rabi profile')
        peak = 2 * math.pi / t_1q
        waist = self.get('gates', 'waist_um') * 1e-6
        if self.get('gates', 'profile') == 'microwave':
            return RabiProfile.microwave(peak / waist)
        return RabiProfile.laser(peak, waist)

    def get_base_inputs(self) -> BaseInputs:
        layout = self.values['layout']
        capacitor = self.values['capacitor']
        switch = self.values['switch']
        timing = self.values['timing']
        analog = self.values['analog']
        return BaseInputs(n_qubits=layout['n_qubits'], k=layout['k'], n_de_gz=layout['n_de_gz'],
                          n_de_jz=layout['n_de_jz'], n_se_z=layout['n_se_z'],
                          ion_height=layout['ion_height_um'] * 1e-6, zone_x=layout['zone_x_um'] * 1e-6,
                          zone_y=layout['zone_y_um'] * 1e-6, cap_density=capacitor['density_ff_per_um2'] * 1e-3,
                          cap_side=capacitor['side_um'] * 1e-6, rf_voltage=capacitor['rf_voltage_v'],
                          shim_rf_capacitance=capacitor['shim_rf_capacitance_ff'] * 1e-15,
                          n_settings=switch['n_settings'], switch_mode=SwitchMode.parse(switch['mode']),
                          tg_per_de=switch['tg_per_de'], tg_per_se=switch['tg_per_se'],
                          tg_side=switch['tg_side_um'] * 1e-6, demux_order=self.get('demux', 'order'),
                          t_ec=self.get('demux', 't_ec_us') * 1e-6,
                          link_rate=self.get('link', 'rate_mbit_s') * 1e6, t_0=timing['t0_us'] * 1e-6,
                          t_1q=timing['t1q_us'] * 1e-6, t_2q=timing['t2q_us'] * 1e-6,
                          transistor_capacitance=analog['transistor_capacitance_ff'] * 1e-15,
                          shim_field=analog['shim_field_v_m'], tau=analog['tau_s'],
                          df_de=analog['df_de_hz_per_v_m'])

    def to_dict(self) -> dict:
        return copy.deepcopy(self.values)

    def config_hash(self) -> str:
        canonical = json.dumps(self.values, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:16]
