import math
from enum import Enum, auto
from typing import Optional

from wisesim.wiring.api import SwitchMode


class ParamsError(ValueError):
    pass


class MemoryErrorForm(Enum):
    LINEAR = auto()
    QUADRATIC = auto()

    @staticmethod
    def parse(name: str) -> 'MemoryErrorForm':
        try:
            return MemoryErrorForm[name.upper()]
        except KeyError:
            raise ParamsError(f'unknown memory error form: {name}')


class MemoryErrorModel:
    """
    Idle-qubit error accumulated while the array reconfigures: a * t (Linear) or a * t^2
    (Quadratic). Without an explicit coefficient the model is calibrated so that it passes
    through the anchor point.
    """

    def __init__(self, form: MemoryErrorForm = MemoryErrorForm.LINEAR, coefficient: Optional[float] = None,
                 anchor_t: float = 22e-3, anchor_error: float = 2e-5):
        if anchor_t <= 0 or anchor_error < 0:
            raise ParamsError(f'invalid memory error anchor: t={anchor_t}, error={anchor_error}')
        self.form = form
        self.anchor_t = anchor_t
        self.anchor_error = anchor_error
        if coefficient is None:
            coefficient = anchor_error / (anchor_t if form == MemoryErrorForm.LINEAR else anchor_t ** 2)
        if coefficient < 0:
            raise ParamsError(f'memory error coefficient must be non-negative: {coefficient}')
        self.coefficient = coefficient

    def get_form(self) -> MemoryErrorForm:
        return self.form

    def get_coefficient(self) -> float:
        return self.coefficient

    def get_anchor(self) -> tuple:
        return self.anchor_t, self.anchor_error

    def error_at(self, t: float) -> float:
        if t < 0:
            raise ParamsError(f'idle time must be non-negative: {t}')
        return self.coefficient * (t if self.form == MemoryErrorForm.LINEAR else t ** 2)

    def __str__(self) -> str:
        return f'MemoryErrorModel({self.form.name}, a={self.coefficient:.4g})'


class BaseInputs:
    """
    The independent inputs of the system parameter table, in SI units. m and n are optional;
    when absent the layout is optimized for n_qubits.
    """

    def __init__(self, n_qubits: int = 1000, k: int = 6, m: Optional[int] = None, n: Optional[int] = None,
                 n_de_gz: int = 10, n_de_jz: int = 20, n_se_z: int = 10, ion_height: float = 40e-6,
                 zone_x: float = 400e-6, zone_y: float = 400e-6, cap_density: float = 3e-3,
                 cap_side: float = 100e-6, rf_voltage: float = 100.0, shim_rf_capacitance: float = 1e-15,
                 n_settings: int = 2, switch_mode: SwitchMode = SwitchMode.PER_ELECTRODE, tg_per_de: int = 2,
                 tg_per_se: int = 1, tg_side: float = 50e-6, demux_order: int = 128, t_ec: float = 3e-6,
                 link_rate: float = 50e6, t_0: float = 100e-6, t_1q: float = 1e-6, t_2q: float = 100e-6,
                 transistor_capacitance: float = 30e-15, shim_field: float = 200.0, tau: float = 180.0,
                 df_de: float = 1000.0):
        self.n_qubits = n_qubits
        self.k = k
        self.m = m
        self.n = n
        self.n_de_gz = n_de_gz
        self.n_de_jz = n_de_jz
        self.n_se_z = n_se_z
        self.ion_height = ion_height
        self.zone_x = zone_x
        self.zone_y = zone_y
        self.cap_density = cap_density
        self.cap_side = cap_side
        self.rf_voltage = rf_voltage
        self.shim_rf_capacitance = shim_rf_capacitance
        self.n_settings = n_settings
        self.switch_mode = switch_mode
        self.tg_per_de = tg_per_de
        self.tg_per_se = tg_per_se
        self.tg_side = tg_side
        self.demux_order = demux_order
        self.t_ec = t_ec
        self.link_rate = link_rate
        self.t_0 = t_0
        self.t_1q = t_1q
        self.t_2q = t_2q
        self.transistor_capacitance = transistor_capacitance
        self.shim_field = shim_field
        self.tau = tau
        self.df_de = df_de
        self._validate()

    def _validate(self):
        if (self.m is None) != (self.n is None):
            raise ParamsError('m and n must be given together')
        if self.m is not None and self.k > 0 and self.m % self.k != 0:
            raise ParamsError(f'row length m={self.m} is not a multiple of k={self.k}')
        for name in ('n_qubits', 'k', 'n_settings', 'demux_order'):
            if getattr(self, name) is None or getattr(self, name) < 1:
                raise ParamsError(f'{name} must be a positive integer: {getattr(self, name)}')
        for name in ('ion_height', 'zone_x', 'zone_y', 'cap_density', 'cap_side', 'tg_side', 't_ec',
                     'link_rate', 't_0', 'shim_rf_capacitance', 'transistor_capacitance', 'shim_field', 'tau',
                     'rf_voltage', 'df_de'):
            value = getattr(self, name)
            if value is None or not value > 0 or math.isinf(value):
                raise ParamsError(f'{name} must be positive and finite: {value}')
        for name in ('n_de_gz', 'n_de_jz', 'n_se_z', 'tg_per_de', 'tg_per_se', 't_1q', 't_2q'):
            if getattr(self, name) < 0:
                raise ParamsError(f'{name} must be non-negative: {getattr(self, name)}')

    def to_dict(self) -> dict:
        values = dict(vars(self))
        values['switch_mode'] = self.switch_mode.name
        return values

    @staticmethod
    def from_dict(values: dict) -> 'BaseInputs':
        values = dict(values)
        if isinstance(values.get('switch_mode'), str):
            values['switch_mode'] = SwitchMode[values['switch_mode']]
        return BaseInputs(**values)

    def __eq__(self, other) -> bool:
        return isinstance(other, BaseInputs) and self.to_dict() == other.to_dict()


class Field:
    """
    One row of the system parameter table. Values are held in SI units and divided by scale
    for display, then rounded half-up to the given number of decimals (negative means tens,
    hundreds and so on).
    """

    def __init__(self, name: str, symbol: str, quantity: str, unit: str = '', scale: float = 1.0,
                 digits: int = 0):
        self.name = name
        self.symbol = symbol
        self.quantity = quantity
        self.unit = unit
        self.scale = scale
        self.digits = digits

    def display(self, value: float) -> float:
        if value is None or math.isinf(value):
            return value
        factor = 10.0 ** self.digits
        shown = math.floor(value / self.scale * factor + 0.5 + 1e-9) / factor
        return int(shown) if self.digits <= 0 else shown


FIELDS = [
    Field('n_qubits', 'N', 'No. of qubits = No. of zones'),
    Field('k', 'k', 'No. of qubits per junction'),
    Field('m', 'm', 'Zone count along x'),
    Field('n', 'n', 'Zone count along y'),
    Field('n_jz', 'N_jz', 'No. of junction zones'),
    Field('n_gz', 'N_gz', 'No. of gate zones'),
    Field('n_de_gz', 'N_de/gz', 'No. of dynamic electrodes per gate zone'),
    Field('n_de_jz', 'N_de/jz', 'No. of dynamic electrodes per junction zone'),
    Field('n_se_z', 'N_se/z', 'No. of shim electrodes per zone'),
    Field('n_de', 'N_de', 'No. of dynamic electrodes'),
    Field('n_se', 'N_se', 'No. of shim electrodes'),
    Field('n_e', 'N_e', 'No. of electrodes'),
    Field('ion_height', 'h', 'Ion height', 'um', 1e-6),
    Field('zone_x', 'x_z', 'Average zone size along x', 'um', 1e-6),
    Field('zone_y', 'y_z', 'Average zone size along y', 'um', 1e-6),
    Field('chip_x', 'x', 'Chip size (active region) along x', 'mm', 1e-3),
    Field('chip_y', 'y', 'Chip size (active region) along y', 'mm', 1e-3),
    Field('area_total', 'A_t', 'Total area (active region)', 'mm^2', 1e-6),
    Field('cap_density', 'C/A_C', 'On-chip capacitance density', 'fF/um^2', 1e-3),
    Field('cap_area', 'A_C', 'On-chip capacitor size', 'um^2', 1e-12),
    Field('cap_area_total', 'A_t,c', 'Total area (capacitors)', 'mm^2', 1e-6),
    Field('capacitance', 'C', 'Shim capacitance to GND (when floating)', 'pF', 1e-12),
    Field('rf_voltage', 'V_RF', 'RF voltage', 'V'),
    Field('shim_rf_capacitance', 'C_s,RF', 'Shim-to-RF capacitance', 'fF', 1e-15),
    Field('rf_pickup', 'V_s,RF', 'RF voltage on shim electrodes', 'mV', 1e-3),
    Field('n_settings', 'N_set', 'No. of dynamic switch settings'),
    Field('n_ddac', 'N_dDAC', 'No. of dynamic DACs'),
    Field('demux_order', 'M', 'Multiplexing order'),
    Field('n_sdac', 'N_sDAC', 'No. of shim DACs'),
    Field('n_sw', 'N_sw', 'Length of switch select word', 'bits'),
    Field('link_rate', 'dN_s/dt', 'Serial link data rate', 'Mbit/s', 1e6),
    Field('t_ss', 't_ss', 'Switch select time', 'us', 1e-6),
    Field('tg_per_de', 'N_tg/de', 'No. of trans. gates per dynamic electrode'),
    Field('tg_per_se', 'N_tg/se', 'No. of trans. gates per shim electrode'),
    Field('n_tg', 'N_tg', 'No. of trans. gates'),
    Field('tg_area', 'A_tg', 'Trans. gate size', 'um^2', 1e-12),
    Field('tg_area_total', 'A_t,tg', 'Total area (trans. gates)', 'mm^2', 1e-6),
    Field('t_ec', 't_ec', 'Charging time per shim electrode', 'us', 1e-6),
    Field('t_sc', 't_sc', 'Total shim charging time', 'us', 1e-6),
    Field('t_0', 't_0', 'Qubit swap time', 'us', 1e-6),
    Field('reconfig_steps', 'N_r', 'Maximum qubit reconfiguration steps'),
    Field('t_r', 't_r', 'Maximum qubit reconfiguration time', 'ms', 1e-3),
    Field('transistor_capacitance', 'C_t', 'Transistor capacitance', 'fF', 1e-15),
    Field('shim_field', 'E_s', 'Typical shim field', 'V/m'),
    Field('charge_injection_field', 'dE_c', 'Charge injection field systematic', 'V/m', 1.0, 1),
    Field('tau', 'tau', 'Shim discharging time constant', 's'),
    Field('drift_reconfig', 'dE_r', 'Shim field drift during reconfiguration', 'mV/m', 1e-3),
    Field('drift_gate', 'dE_2q', 'Shim field drift during two-qubit gate pulse', 'mV/m', 1e-3, 1),
    Field('t_1q', 't_1q', '1-qubit gate pulse time', 'us', 1e-6),
    Field('t_2q', 't_2q', '2-qubit gate pulse time', 'us', 1e-6),
    Field('t_tag_1q', 't_tag,1q', 'Transport-assisted 1-qubit gate time', 'us', 1e-6),
    Field('t_tag_2q', 't_tag,2q', 'Transport-assisted 2-qubit gate time', 'us', 1e-6),
    Field('max_speed', '', 'Maximum system speed', 'layers/s', 1.0, -2),
    Field('min_speed', '', 'Minimum system speed', 'layers/s', 1.0, -1)
]

FIELDS_BY_NAME = {field.name: field for field in FIELDS}


class SystemParams:
    """
    Every row of the system parameter table, derived from a BaseInputs instance.
    """

    def __init__(self, base: BaseInputs, values: dict):
        missing = [field.name for field in FIELDS if field.name not in values]
        if missing:
            raise ParamsError(f'system parameters missing: {", ".join(missing)}')
        self.base = base
        self.values = {field.name: values[field.name] for field in FIELDS}

    def get_base(self) -> BaseInputs:
        return self.base

    def get(self, name: str):
        try:
            return self.values[name]
        except KeyError:
            raise ParamsError(f'no such system parameter: {name}')

    def __getattr__(self, name: str):
        values = self.__dict__.get('values')
        if values is not None and name in values:
            return values[name]
        raise AttributeError(name)

    def to_dict(self) -> dict:
        return {
            'base': self.base.to_dict(),
            'values': dict(self.values)
        }

    def __eq__(self, other) -> bool:
        return isinstance(other, SystemParams) and self.base == other.base and self.values == other.values

    @staticmethod
    def from_dict(values: dict) -> 'SystemParams':
        return SystemParams(BaseInputs.from_dict(values['base']), values['values'])
