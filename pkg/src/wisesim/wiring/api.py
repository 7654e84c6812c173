import math
from enum import Enum, auto

import numpy as np


class DemuxCapacityError(ValueError):
    pass


class SelectWord:
    """
    Switch select word: one bit per zone in row-major zone order. As an integer, zone 0 is the
    least significant bit; as bytes, bits are packed little-endian.
    """

    def __init__(self, bits: np.ndarray):
        self.bits = np.asarray(bits, dtype=bool).reshape(-1).copy()
        self.bits.setflags(write=False)

    @staticmethod
    def from_int(value: int, length: int) -> 'SelectWord':
        if value < 0 or value >> length:
            raise ValueError(f'{value:#x} does not fit a {length}-bit select word')
        return SelectWord.from_bytes(value.to_bytes(SelectWord.byte_length(length), 'little'), length)

    @staticmethod
    def from_bytes(data: bytes, length: int) -> 'SelectWord':
        if len(data) != SelectWord.byte_length(length):
            raise ValueError(f'{length}-bit select word needs {SelectWord.byte_length(length)} bytes, got {len(data)}')
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder='little')
        if bits[length:].any():
            raise ValueError('padding bits of select word are set')
        return SelectWord(bits[:length])

    @staticmethod
    def from_hex(text: str, length: int) -> 'SelectWord':
        return SelectWord.from_int(int(text, 16), length)

    @staticmethod
    def byte_length(length: int) -> int:
        return (length + 7) // 8

    def get_bits(self) -> np.ndarray:
        return self.bits

    def get_length(self) -> int:
        return len(self.bits)

    def get_active_count(self) -> int:
        return int(self.bits.sum())

    def to_bytes(self) -> bytes:
        return np.packbits(self.bits, bitorder='little').tobytes()

    def to_int(self) -> int:
        return int.from_bytes(self.to_bytes(), 'little')

    def to_hex(self) -> str:
        return f'{self.to_int():0{max(1, (self.get_length() + 3) // 4)}x}'

    def to_bitstring(self) -> str:
        """
        Bits in zone order, zone 0 first.
        """
        return ''.join('1' if bit else '0' for bit in self.bits)

    def __len__(self) -> int:
        return self.get_length()

    def __eq__(self, other) -> bool:
        return isinstance(other, SelectWord) and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.to_bytes())

    def __str__(self) -> str:
        return f'SelectWord({self.to_bitstring()})' if self.get_length() <= 64 \
            else f'SelectWord({self.get_length()} bits, {self.get_active_count()} set)'


class SwitchMode(Enum):
    PER_ELECTRODE = auto()
    SINGLE_PER_ZONE = auto()

    @staticmethod
    def parse(name: str) -> 'SwitchMode':
        normalized = name.replace('_', '').replace('-', '').lower()
        for mode in SwitchMode:
            if mode.name.replace('_', '').lower() == normalized:
                return mode
        raise ValueError(f'unknown switch mode: {name}')


class SwitchNetworkConfig:
    """
    Integrated switch network driving the dynamic electrodes. PerElectrode switches every dynamic
    electrode between N_set shared waveforms; SinglePerZone switches a single electrode per zone
    between a swap well and a stationary well fed by two extra waveform rails.
    """

    def __init__(self, mode: SwitchMode = SwitchMode.PER_ELECTRODE, n_settings: int = 2, gates_per_dynamic: int = 2,
                 gates_per_shim: int = 1, gate_side: float = 50e-6):
        if n_settings < 1 or gates_per_dynamic < 0 or gates_per_shim < 0 or gate_side <= 0:
            raise ValueError('switch network counts must be non-negative and the gate size positive')
        self.mode = mode
        self.n_settings = n_settings
        self.gates_per_dynamic = gates_per_dynamic
        self.gates_per_shim = gates_per_shim
        self.gate_side = gate_side

    def get_mode(self) -> SwitchMode:
        return self.mode

    def get_n_settings(self) -> int:
        return self.n_settings

    def get_gates_per_dynamic(self) -> int:
        return self.gates_per_dynamic

    def get_gates_per_shim(self) -> int:
        return self.gates_per_shim

    def get_gate_area(self) -> float:
        return self.gate_side ** 2

    def get_rail_sources(self) -> int:
        return 2 if self.mode == SwitchMode.SINGLE_PER_ZONE else 0


class DemuxConfig:
    """
    Shim demultiplexer: each shim DAC serves M - 1 electrodes through an M-way switch whose
    output x = 0 is the all-off state. One full charging cycle takes t_sc = M * t_ec.
    """

    def __init__(self, order: int = 128, t_ec: float = 3e-6, cap_density: float = 3e-3, cap_side: float = 100e-6):
        if order < 2 or order & (order - 1):
            raise ValueError(f'multiplexing order must be a power of two >= 2: {order}')
        if t_ec <= 0 or cap_density <= 0 or cap_side <= 0:
            raise ValueError('charge time and capacitor parameters must be positive')
        self.order = order
        self.t_ec = t_ec
        self.cap_density = cap_density
        self.cap_side = cap_side

    def get_order(self) -> int:
        return self.order

    def get_register_bits(self) -> int:
        return self.order.bit_length() - 1

    def get_t_ec(self) -> float:
        return self.t_ec

    def get_charge_cycle_time(self) -> float:
        return self.order * self.t_ec

    def get_capacity_per_dac(self) -> int:
        return self.order - 1

    def get_shim_dac_count(self, n_shims: int) -> int:
        return math.ceil(n_shims / self.get_capacity_per_dac())

    def get_capacitor_area(self) -> float:
        return self.cap_side ** 2

    def get_capacitance(self) -> float:
        return self.cap_density * self.get_capacitor_area()

    def __str__(self) -> str:
        return f'DemuxConfig(M={self.order}, t_ec={self.t_ec * 1e6:g} us)'


class AnalogErrorParams:
    def __init__(self, rf_voltage: float = 100.0, shim_rf_capacitance: float = 1e-15,
                 transistor_capacitance: float = 30e-15, shim_field: float = 200.0, tau: float = 180.0,
                 df_de: float = 1000.0):
        values = {
            'rf_voltage': rf_voltage,
            'shim_rf_capacitance': shim_rf_capacitance,
            'transistor_capacitance': transistor_capacitance,
            'shim_field': shim_field,
            'tau': tau,
            'df_de': df_de
        }
        for name, value in values.items():
            if value is None or value <= 0:
                raise ValueError(f'{name} must be strictly positive: {value}')
        self.rf_voltage = rf_voltage
        self.shim_rf_capacitance = shim_rf_capacitance
        self.transistor_capacitance = transistor_capacitance
        self.shim_field = shim_field
        self.tau = tau
        self.df_de = df_de

    def get_rf_voltage(self) -> float:
        return self.rf_voltage

    def get_shim_rf_capacitance(self) -> float:
        return self.shim_rf_capacitance

    def get_transistor_capacitance(self) -> float:
        return self.transistor_capacitance

    def get_shim_field(self) -> float:
        return self.shim_field

    def get_tau(self) -> float:
        return self.tau

    def get_df_de(self) -> float:
        return self.df_de
