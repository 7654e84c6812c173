import math
from enum import Enum, auto
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np


class LayoutError(ValueError):
    pass


class ConfigMismatchError(ValueError):
    pass


class ZoneKind(Enum):
    GATE_ODD = auto()
    GATE_EVEN = auto()
    JUNCTION_ODD = auto()
    JUNCTION_EVEN = auto()

    def is_odd(self) -> bool:
        return self in (ZoneKind.GATE_ODD, ZoneKind.JUNCTION_ODD)

    def is_junction(self) -> bool:
        return self in (ZoneKind.JUNCTION_ODD, ZoneKind.JUNCTION_EVEN)

    @staticmethod
    def of(junction: bool, odd: bool) -> 'ZoneKind':
        if junction:
            return ZoneKind.JUNCTION_ODD if odd else ZoneKind.JUNCTION_EVEN
        else:
            return ZoneKind.GATE_ODD if odd else ZoneKind.GATE_EVEN


class ChainMode(Enum):
    SPLIT = auto()
    CHAINED = auto()


class ElectrodeCounts:
    """
    Dynamic and shim electrode counts for a single zone of each kind.
    """

    def __init__(self, n_de_gz: int = 10, n_de_jz: int = 20, n_se_z: int = 10):
        for name, value in (('n_de_gz', n_de_gz), ('n_de_jz', n_de_jz), ('n_se_z', n_se_z)):
            if int(value) != value or value < 0:
                raise LayoutError(f'{name} must be a non-negative integer: {value}')
        self.n_de_gz = int(n_de_gz)
        self.n_de_jz = int(n_de_jz)
        self.n_se_z = int(n_se_z)

    def get_n_de_gz(self) -> int:
        return self.n_de_gz

    def get_n_de_jz(self) -> int:
        return self.n_de_jz

    def get_n_se_z(self) -> int:
        return self.n_se_z

    def __eq__(self, other) -> bool:
        return isinstance(other, ElectrodeCounts) and \
            (self.n_de_gz, self.n_de_jz, self.n_se_z) == (other.n_de_gz, other.n_de_jz, other.n_se_z)

    def __repr__(self) -> str:
        return f'ElectrodeCounts(n_de_gz={self.n_de_gz}, n_de_jz={self.n_de_jz}, n_se_z={self.n_se_z})'


class ZoneGeometry:
    """
    Zone footprint and ion height, stored in meters.
    """

    def __init__(self, zone_x: float = 400e-6, zone_y: float = 400e-6, ion_height: float = 40e-6):
        for name, value in (('zone_x', zone_x), ('zone_y', zone_y), ('ion_height', ion_height)):
            if not value > 0:
                raise LayoutError(f'{name} must be positive: {value}')
        self.zone_x = float(zone_x)
        self.zone_y = float(zone_y)
        self.ion_height = float(ion_height)

    def get_zone_x(self) -> float:
        return self.zone_x

    def get_zone_y(self) -> float:
        return self.zone_y

    def get_ion_height(self) -> float:
        return self.ion_height

    def get_zone_area(self) -> float:
        return self.zone_x * self.zone_y

    def __eq__(self, other) -> bool:
        return isinstance(other, ZoneGeometry) and all(
            math.isclose(mine, theirs, rel_tol=1e-12) for mine, theirs in
            ((self.zone_x, other.zone_x), (self.zone_y, other.zone_y), (self.ion_height, other.ion_height)))


class TrapLayout:
    """
    An m x n grid of zones. Zone (i, j) has row-major index i * n + j; i runs along the x axis
    (horizontal swaps) and j along the y axis (vertical swaps). Junction zones sit at every i
    that is a multiple of k, so each row splits into m / k segments of one junction followed by
    k - 1 gate zones. A zone is odd iff i + j is odd.
    """

    def __init__(self, m: int, n: int, k: int, electrodes: ElectrodeCounts = None, geometry: ZoneGeometry = None):
        if k < 1:
            raise LayoutError(f'k must be at least 1: {k}')
        if m < 1 or n < 1:
            raise LayoutError(f'grid must be non-empty: {m} x {n}')
        if m % k != 0:
            raise LayoutError(f'row length m={m} is not a multiple of k={k}')
        self.m = int(m)
        self.n = int(n)
        self.k = int(k)
        self.electrodes = electrodes if electrodes is not None else ElectrodeCounts()
        self.geometry = geometry if geometry is not None else ZoneGeometry()

        i, j = np.meshgrid(np.arange(self.m), np.arange(self.n), indexing='ij')
        self.junction_mask = (i % self.k) == 0
        self.odd_mask = ((i + j) % 2) == 1

    def get_m(self) -> int:
        return self.m

    def get_n(self) -> int:
        return self.n

    def get_k(self) -> int:
        return self.k

    def get_electrodes(self) -> ElectrodeCounts:
        return self.electrodes

    def get_geometry(self) -> ZoneGeometry:
        return self.geometry

    def get_zone_count(self) -> int:
        return self.m * self.n

    def get_junction_count(self) -> int:
        return self.n * self.m // self.k

    def get_gate_count(self) -> int:
        return self.get_zone_count() - self.get_junction_count()

    def get_segment_count(self) -> int:
        return self.m // self.k

    def get_kinds(self) -> List[List[ZoneKind]]:
        return [[self.kind(i, j) for j in range(self.n)] for i in range(self.m)]

    def kind(self, i: int, j: int) -> ZoneKind:
        self._check_coords(i, j)
        return ZoneKind.of(bool(self.junction_mask[i, j]), bool(self.odd_mask[i, j]))

    def kind_of(self, zone: int) -> ZoneKind:
        return self.kind(*self.coords(zone))

    def is_junction(self, zone: int) -> bool:
        i, j = self.coords(zone)
        return bool(self.junction_mask[i, j])

    def zone_index(self, i: int, j: int) -> int:
        self._check_coords(i, j)
        return i * self.n + j

    def coords(self, zone: int) -> Tuple[int, int]:
        if not 0 <= zone < self.get_zone_count():
            raise LayoutError(f'zone index {zone} outside {self.m} x {self.n} grid')
        return divmod(int(zone), self.n)

    def segment_of(self, zone: int) -> Tuple[int, int]:
        i, _ = self.coords(zone)
        return divmod(i, self.k)

    def to_dict(self) -> dict:
        return {
            'm': self.m,
            'n': self.n,
            'k': self.k,
            'n_zones': self.get_zone_count(),
            'n_junction_zones': self.get_junction_count(),
            'n_gate_zones': self.get_gate_count(),
            'n_de_gz': self.electrodes.n_de_gz,
            'n_de_jz': self.electrodes.n_de_jz,
            'n_se_z': self.electrodes.n_se_z,
            'zone_x_um': self.geometry.zone_x * 1e6,
            'zone_y_um': self.geometry.zone_y * 1e6,
            'ion_height_um': self.geometry.ion_height * 1e6,
            'kinds': [[kind.name for kind in row] for row in self.get_kinds()]
        }

    @staticmethod
    def from_dict(values: dict) -> 'TrapLayout':
        electrodes = ElectrodeCounts(values['n_de_gz'], values['n_de_jz'], values['n_se_z'])
        geometry = ZoneGeometry(values['zone_x_um'] * 1e-6, values['zone_y_um'] * 1e-6,
                                values['ion_height_um'] * 1e-6)
        return TrapLayout(values['m'], values['n'], values['k'], electrodes, geometry)

    def _check_coords(self, i: int, j: int):
        if not (0 <= i < self.m and 0 <= j < self.n):
            raise LayoutError(f'zone ({i}, {j}) outside {self.m} x {self.n} grid')

    def __eq__(self, other) -> bool:
        return isinstance(other, TrapLayout) and (self.m, self.n, self.k) == (other.m, other.n, other.k) \
            and self.electrodes == other.electrodes and self.geometry == other.geometry

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.k))

    def __str__(self) -> str:
        return f'TrapLayout({self.m} x {self.n}, k={self.k})'


class QubitConfig:
    """
    Qubit occupancy of every zone of a layout. Each zone holds an ordered (left to right) tuple of
    qubit ids; Split mode allows at most one qubit per zone, Chained mode up to two per gate zone
    and none in junctions.
    """

    def __init__(self, layout: TrapLayout, occupancy: Sequence[Iterable[int]], chain_mode: ChainMode = ChainMode.SPLIT):
        if len(occupancy) != layout.get_zone_count():
            raise ConfigMismatchError(f'occupancy covers {len(occupancy)} zones but {layout} has '
                                      f'{layout.get_zone_count()}')
        self.layout = layout
        self.chain_mode = chain_mode
        self.occupancy = tuple(tuple(int(q) for q in zone) for zone in occupancy)
        self.positions = self._validate()

    @staticmethod
    def from_sequence(layout: TrapLayout, qubits: Sequence[int]) -> 'QubitConfig':
        """
        Split-mode config with qubits[z] in zone z; negative ids mark empty zones.
        """
        return QubitConfig(layout, [(q,) if q >= 0 else () for q in qubits], ChainMode.SPLIT)

    @staticmethod
    def from_grid(layout: TrapLayout, grid: np.ndarray) -> 'QubitConfig':
        return QubitConfig.from_sequence(layout, [int(q) for q in np.asarray(grid).reshape(-1)])

    def get_layout(self) -> TrapLayout:
        return self.layout

    def get_chain_mode(self) -> ChainMode:
        return self.chain_mode

    def get_occupancy(self) -> Tuple[Tuple[int, ...], ...]:
        return self.occupancy

    def get_zone(self, zone: int) -> Tuple[int, ...]:
        return self.occupancy[zone]

    def get_qubits(self) -> List[int]:
        return sorted(self.positions.keys())

    def get_qubit_count(self) -> int:
        return len(self.positions)

    def zone_of(self, qubit: int) -> int:
        return self.positions[qubit]

    def is_full(self) -> bool:
        return all(len(zone) == 1 for zone in self.occupancy)

    def to_grid(self) -> np.ndarray:
        """
        Split-mode occupancy as an m x n array of qubit ids with -1 for empty zones.
        """
        if self.chain_mode != ChainMode.SPLIT:
            raise ConfigMismatchError('only Split-mode configs map onto a grid')
        flat = np.array([zone[0] if zone else -1 for zone in self.occupancy], dtype=np.int64)
        return flat.reshape(self.layout.get_m(), self.layout.get_n())

    def to_dict(self) -> dict:
        return {
            'chain_mode': self.chain_mode.name,
            'occupancy': [list(zone) for zone in self.occupancy]
        }

    @staticmethod
    def from_dict(layout: TrapLayout, values: dict) -> 'QubitConfig':
        return QubitConfig(layout, values['occupancy'], ChainMode[values['chain_mode']])

    def _validate(self) -> Dict[int, int]:
        positions = {}
        for zone, qubits in enumerate(self.occupancy):
            if self.chain_mode == ChainMode.SPLIT:
                if len(qubits) > 1:
                    raise ConfigMismatchError(f'zone {zone} holds {len(qubits)} qubits in Split mode')
            else:
                if self.layout.is_junction(zone) and len(qubits) > 0:
                    raise ConfigMismatchError(f'junction zone {zone} holds qubits in Chained mode')
                if len(qubits) > 2:
                    raise ConfigMismatchError(f'zone {zone} holds {len(qubits)} qubits in Chained mode')
            for qubit in qubits:
                if qubit in positions:
                    raise ConfigMismatchError(f'qubit {qubit} appears in zones {positions[qubit]} and {zone}')
                positions[qubit] = zone
        return positions

    def __eq__(self, other) -> bool:
        return isinstance(other, QubitConfig) and self.layout == other.layout \
            and self.chain_mode == other.chain_mode and self.occupancy == other.occupancy

    def __hash__(self) -> int:
        return hash((self.chain_mode, self.occupancy))

    def __str__(self) -> str:
        return f'QubitConfig({self.layout}, {self.chain_mode.name}, {self.get_qubit_count()} qubits)'
