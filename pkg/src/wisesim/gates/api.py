import math
from enum import Enum, auto
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np


class GateCompileError(ValueError):
    pass


class RoutingRequiredError(GateCompileError):
    pass


class RabiKind(Enum):
    MICROWAVE_LINEAR = auto()
    LASER_GAUSSIAN = auto()


class RabiProfile:
    """
    Rabi frequency seen by an ion displaced by x from its zone's null or beam center:
    alpha_i * x near a microwave field null, omega0 * exp(-x^2 / w^2) in a Gaussian laser beam.
    """

    def __init__(self, kind: RabiKind, alpha_i: Optional[float] = None, omega0: Optional[float] = None,
                 waist: Optional[float] = None):
        if kind == RabiKind.MICROWAVE_LINEAR:
            if alpha_i is None or not alpha_i > 0:
                raise ValueError(f'microwave profile needs a positive slope: {alpha_i}')
        else:
            if omega0 is None or not omega0 > 0 or waist is None or not waist > 0:
                raise ValueError(f'laser profile needs positive peak and waist: {omega0}, {waist}')
        self.kind = kind
        self.alpha_i = alpha_i
        self.omega0 = omega0
        self.waist = waist

    @staticmethod
    def microwave(alpha_i: float) -> 'RabiProfile':
        return RabiProfile(RabiKind.MICROWAVE_LINEAR, alpha_i=alpha_i)

    @staticmethod
    def laser(omega0: float, waist: float) -> 'RabiProfile':
        return RabiProfile(RabiKind.LASER_GAUSSIAN, omega0=omega0, waist=waist)

    def get_kind(self) -> RabiKind:
        return self.kind

    def get_alpha_i(self) -> Optional[float]:
        return self.alpha_i

    def get_omega0(self) -> Optional[float]:
        return self.omega0

    def get_waist(self) -> Optional[float]:
        return self.waist

    def get_operating_point(self) -> float:
        """
        Displacement of steepest Rabi frequency slope for a Gaussian beam, w / sqrt(2).
        """
        return self.waist / math.sqrt(2) if self.kind == RabiKind.LASER_GAUSSIAN else 0.0


class GateKind(Enum):
    SQ_PHI = auto()
    SQ_Z = auto()
    TQ = auto()
    SQ_CONTINUOUS = auto()

    def is_single_qubit(self) -> bool:
        return self != GateKind.TQ

    def is_discrete(self) -> bool:
        return self != GateKind.SQ_CONTINUOUS


class GateMode(Enum):
    DEMUX = auto()
    PARALLELIZATION = auto()

    @staticmethod
    def parse(name: str) -> 'GateMode':
        try:
            return GateMode[name.upper()]
        except KeyError:
            raise GateCompileError(f'unknown gate mode: {name}')


class Gate:
    def __init__(self, kind: GateKind, qubits: Sequence[int], phi: float = 0.0, theta: Optional[float] = None):
        expected = 2 if kind == GateKind.TQ else 1
        if len(qubits) != expected:
            raise GateCompileError(f'{kind.name} gate acts on {expected} qubit(s), got {list(qubits)}')
        if len(set(qubits)) != len(qubits):
            raise GateCompileError(f'{kind.name} gate repeats a qubit: {list(qubits)}')
        if kind == GateKind.SQ_CONTINUOUS and theta is None:
            raise GateCompileError('continuous single-qubit gate needs a rotation angle')
        self.kind = kind
        self.qubits = tuple(int(q) for q in qubits)
        self.phi = float(phi)
        self.theta = theta

    def get_kind(self) -> GateKind:
        return self.kind

    def get_qubits(self) -> Tuple[int, ...]:
        return self.qubits

    def get_phi(self) -> float:
        return self.phi

    def get_theta(self) -> Optional[float]:
        return self.theta

    def __eq__(self, other) -> bool:
        return isinstance(other, Gate) and (self.kind, self.qubits, self.phi, self.theta) == \
            (other.kind, other.qubits, other.phi, other.theta)

    def __repr__(self) -> str:
        return f'Gate({self.kind.name}, {self.qubits}, phi={self.phi:g}, theta={self.theta})'


class GateLayer:
    """
    A compiled layer: one gate kind, the select mask of the zones taking part and, for
    continuous layers, the rotation angle each active zone must apply.
    """

    def __init__(self, kind: GateKind, mask: np.ndarray, phi: Optional[float] = None,
                 angles: Optional[Dict[int, float]] = None, pairs: Optional[List[Tuple[int, ...]]] = None):
        self.kind = kind
        self.mask = np.asarray(mask, dtype=bool).reshape(-1)
        self.phi = phi
        self.angles = dict(angles or {})
        self.pairs = list(pairs or [])

    def get_kind(self) -> GateKind:
        return self.kind

    def get_mask(self) -> np.ndarray:
        return self.mask

    def get_phi(self) -> Optional[float]:
        return self.phi

    def get_angles(self) -> Dict[int, float]:
        return self.angles

    def get_pairs(self) -> List[Tuple[int, ...]]:
        return self.pairs

    def get_active_zones(self) -> List[int]:
        return [int(zone) for zone in np.flatnonzero(self.mask)]

    def to_dict(self) -> dict:
        return {
            'kind': self.kind.name,
            'phi': self.phi,
            'active_zones': self.get_active_zones(),
            'pairs': [list(pair) for pair in self.pairs],
            'angles': {str(zone): angle for zone, angle in sorted(self.angles.items())}
        }
