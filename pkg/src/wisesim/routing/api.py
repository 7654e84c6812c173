from collections import OrderedDict
from enum import Enum, auto
from typing import List, Optional

import numpy as np

from wisesim.topology.api import TrapLayout, QubitConfig

DEFAULT_SWAP_TIME = 100e-6


class RoutingError(ValueError):
    pass


class ScheduleVerificationError(Exception):
    pass


class SwapPhase(Enum):
    ODD_HORIZONTAL = auto()
    EVEN_HORIZONTAL = auto()
    ODD_VERTICAL = auto()
    EVEN_VERTICAL = auto()
    SPLIT = auto()
    MERGE = auto()

    def is_horizontal(self) -> bool:
        return self in (SwapPhase.ODD_HORIZONTAL, SwapPhase.EVEN_HORIZONTAL)

    def is_vertical(self) -> bool:
        return self in (SwapPhase.ODD_VERTICAL, SwapPhase.EVEN_VERTICAL)

    def is_swap(self) -> bool:
        return self.is_horizontal() or self.is_vertical()

    def pair_parity(self) -> int:
        """
        Parity of i + j at the lower zone (i, j) of every pair this phase may activate.
        """
        return 0 if self in (SwapPhase.ODD_HORIZONTAL, SwapPhase.ODD_VERTICAL) else 1


class SwapStep:
    """
    One parallel transport operation: a single phase plus the per-zone select mask.
    """

    def __init__(self, phase: SwapPhase, active: np.ndarray, duration: float = DEFAULT_SWAP_TIME):
        self.phase = phase
        self.active = np.asarray(active, dtype=bool).reshape(-1)
        self.duration = duration

    def get_phase(self) -> SwapPhase:
        return self.phase

    def get_active(self) -> np.ndarray:
        return self.active

    def get_duration(self) -> float:
        return self.duration

    def get_active_zones(self) -> List[int]:
        return [int(zone) for zone in np.flatnonzero(self.active)]

    def is_empty(self) -> bool:
        return not self.active.any()

    def __eq__(self, other) -> bool:
        return isinstance(other, SwapStep) and self.phase == other.phase and self.duration == other.duration \
            and np.array_equal(self.active, other.active)

    def __str__(self) -> str:
        return f'SwapStep({self.phase.name}, {int(self.active.sum())} active zones)'


class RoutingStats:
    """
    Step counts per routing phase, in execution order.
    """

    def __init__(self):
        self.counts = OrderedDict()

    def add(self, phase_name: str, steps: int):
        self.counts[phase_name] = self.counts.get(phase_name, 0) + steps

    def get_counts(self) -> dict:
        return dict(self.counts)

    def get_total(self) -> int:
        return sum(self.counts.values())

    def __str__(self) -> str:
        return ', '.join(f'{name}={steps}' for name, steps in self.counts.items())


class SwapSchedule:
    def __init__(self, layout: TrapLayout, steps: List[SwapStep], source: QubitConfig, target: QubitConfig,
                 bound: Optional[int] = None, stats: RoutingStats = None):
        self.layout = layout
        self.steps = list(steps)
        self.source = source
        self.target = target
        self.bound = bound
        self.stats = stats if stats is not None else RoutingStats()

    def get_layout(self) -> TrapLayout:
        return self.layout

    def get_steps(self) -> List[SwapStep]:
        return self.steps

    def get_source(self) -> QubitConfig:
        return self.source

    def get_target(self) -> QubitConfig:
        return self.target

    def get_bound(self) -> Optional[int]:
        return self.bound

    def get_stats(self) -> RoutingStats:
        return self.stats

    def get_step_count(self) -> int:
        return len(self.steps)

    def get_duration(self) -> float:
        return sum(step.get_duration() for step in self.steps)

    def __len__(self) -> int:
        return len(self.steps)
