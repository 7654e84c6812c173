import functools
import logging

import numpy as np

from wisesim.routing.api import SwapPhase, SwapStep, SwapSchedule, ScheduleVerificationError
from wisesim.topology.api import TrapLayout, QubitConfig, ChainMode, ConfigMismatchError

logger = logging.getLogger(__name__)


def candidate_pairs(layout: TrapLayout, phase: SwapPhase) -> np.ndarray:
    """
    All zone pairs (lower, upper) a step of the given phase may activate, as a read-only P x 2
    array. Horizontal pairs join (i, j) and (i + 1, j), vertical pairs join junctions (i, j) and
    (i, j + 1); in both cases the lower zone has i + j parity equal to the phase parity. Split
    and Merge pairs join each chain slot with the zone on its left.
    """
    return _pairs_for(layout.get_m(), layout.get_n(), layout.get_k(), phase)


@functools.lru_cache(maxsize=256)
def _pairs_for(m: int, n: int, k: int, phase: SwapPhase) -> np.ndarray:
    i, j = np.meshgrid(np.arange(m), np.arange(n), indexing='ij')
    if phase.is_horizontal():
        selected = (i < m - 1) & ((i + j) % 2 == phase.pair_parity())
        lower = i[selected] * n + j[selected]
        upper = lower + n
    elif phase.is_vertical():
        selected = (j < n - 1) & ((i + j) % 2 == phase.pair_parity()) & (i % k == 0)
        lower = i[selected] * n + j[selected]
        upper = lower + 1
    elif k >= 2:
        selected = (i % k) % 2 == 1
        upper = i[selected] * n + j[selected]
        lower = upper - n
    else:
        lower = upper = np.zeros(0, dtype=np.int64)
    pairs = np.stack([lower, upper], axis=1).astype(np.int64)
    pairs.setflags(write=False)
    return pairs


def active_pairs(layout: TrapLayout, phase: SwapPhase, active: np.ndarray) -> np.ndarray:
    """
    Pairs whose zones are both selected; raises if any selected zone is left without a partner.
    """
    if active.shape != (layout.get_zone_count(),):
        raise ScheduleVerificationError(f'select mask has {active.shape[0]} bits for {layout.get_zone_count()} zones')
    pairs = candidate_pairs(layout, phase)
    chosen = pairs[active[pairs[:, 0]] & active[pairs[:, 1]]]
    covered = np.zeros(layout.get_zone_count(), dtype=bool)
    covered[chosen.reshape(-1)] = True
    orphans = np.flatnonzero(active & ~covered)
    if orphans.size > 0:
        raise ScheduleVerificationError(f'{phase.name} step selects zones {orphans[:8].tolist()} '
                                        f'without a valid {phase.name} partner')
    return chosen


def switchable_swap_step(config: QubitConfig, step: SwapStep) -> QubitConfig:
    """
    One parallel operation: every selected pair swaps its zone contents (or splits or merges its
    chain) while unselected zones hold. Returns the resulting config.
    """
    layout = config.get_layout()
    phase = step.get_phase()
    chosen = active_pairs(layout, phase, step.get_active())
    cells = [list(zone) for zone in config.get_occupancy()]
    mode = config.get_chain_mode()
    if phase.is_swap():
        for lower, upper in chosen:
            cells[lower], cells[upper] = cells[upper], cells[lower]
    elif phase == SwapPhase.SPLIT:
        if mode != ChainMode.CHAINED:
            raise ScheduleVerificationError(f'split applied to a {mode.name} config')
        for lower, upper in chosen:
            if len(cells[upper]) != 2 or cells[lower]:
                raise ScheduleVerificationError(f'no chain to split between zones {lower} and {upper}')
            cells[lower] = [cells[upper][0]]
            cells[upper] = [cells[upper][1]]
        mode = ChainMode.SPLIT
    else:
        if mode != ChainMode.SPLIT:
            raise ScheduleVerificationError(f'merge applied to a {mode.name} config')
        for lower, upper in chosen:
            if len(cells[lower]) != 1 or len(cells[upper]) != 1:
                raise ScheduleVerificationError(f'zones {lower} and {upper} cannot merge')
            cells[upper] = cells[lower] + cells[upper]
            cells[lower] = []
        mode = ChainMode.CHAINED

    try:
        return QubitConfig(layout, cells, mode)
    except ConfigMismatchError as error:
        raise ScheduleVerificationError(f'{phase.name} step breaks the occupancy rules: {error}')


def execute(schedule: SwapSchedule, source: QubitConfig = None) -> QubitConfig:
    """
    Applies every step of the schedule to the source config and returns the final config,
    raising ScheduleVerificationError on the first invalid step.
    """
    config = source if source is not None else schedule.get_source()
    layout = schedule.get_layout()
    if config.get_layout() != layout:
        raise ScheduleVerificationError(f'source config lives on {config.get_layout()}, schedule on {layout}')

    initial_qubits = config.get_qubits()
    for index, step in enumerate(schedule.get_steps()):
        try:
            config = switchable_swap_step(config, step)
        except ScheduleVerificationError as error:
            raise ScheduleVerificationError(f'step {index}: {error}')

    if config.get_qubits() != initial_qubits:
        raise ScheduleVerificationError('qubit set changed during execution')
    return config


def verify(schedule: SwapSchedule) -> QubitConfig:
    result = execute(schedule)
    if result != schedule.get_target():
        raise ScheduleVerificationError(f'schedule of {len(schedule)} steps does not reach its target config')
    logger.debug(f'verified schedule of {len(schedule)} steps on {schedule.get_layout()}')
    return result
