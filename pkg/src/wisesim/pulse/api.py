import math
from typing import Iterable, List, Tuple


class UnitarityError(ValueError):
    pass


class Rotation:
    """
    Rotation by angle about the equatorial axis cos(phi) x + sin(phi) y.
    """

    def __init__(self, angle: float, phase: float = 0.0):
        if not math.isfinite(angle) or not math.isfinite(phase):
            raise ValueError(f'rotation must be finite: angle={angle}, phase={phase}')
        self.angle = float(angle)
        self.phase = math.fmod(float(phase), 2 * math.pi)
        if self.phase < 0:
            self.phase += 2 * math.pi

    def get_angle(self) -> float:
        return self.angle

    def get_phase(self) -> float:
        return self.phase

    def scaled(self, scale: float) -> 'Rotation':
        return Rotation(self.angle * scale, self.phase)

    def shifted(self, delta_phase: float) -> 'Rotation':
        return Rotation(self.angle, self.phase + delta_phase)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rotation) and (self.angle, self.phase) == (other.angle, other.phase)

    def __repr__(self) -> str:
        return f'Rotation({self.angle:.6g}, {self.phase:.6g})'


class PulseSequence:
    """
    Pulses in time order: the first pulse acts first.
    """

    def __init__(self, pulses: Iterable[Rotation], name: str = 'custom'):
        self.pulses = list(pulses)
        self.name = name

    def get_pulses(self) -> List[Rotation]:
        return self.pulses

    def get_name(self) -> str:
        return self.name

    def get_total_angle(self) -> float:
        return sum(abs(pulse.get_angle()) for pulse in self.pulses)

    def as_tuples(self) -> List[Tuple[float, float]]:
        return [(pulse.get_angle(), pulse.get_phase()) for pulse in self.pulses]

    def __len__(self) -> int:
        return len(self.pulses)

    def __repr__(self) -> str:
        return f'PulseSequence({self.name}, {self.pulses})'
