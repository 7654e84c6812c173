import logging
from typing import Callable, List, Sequence

import numpy as np

from wisesim.routing.api import SwapPhase, SwapStep, SwapSchedule, RoutingStats, RoutingError, \
    DEFAULT_SWAP_TIME
from wisesim.routing.executor import verify
from wisesim.routing.matching import column_assignment
from wisesim.topology.api import TrapLayout, QubitConfig, ChainMode, ConfigMismatchError
from wisesim.topology.chains import chained_config, split_config, chain_zones
from wisesim.topology.layout import linear_layout

logger = logging.getLogger(__name__)

HORIZONTAL_PHASES = (SwapPhase.ODD_HORIZONTAL, SwapPhase.EVEN_HORIZONTAL)
VERTICAL_PHASES = (SwapPhase.ODD_VERTICAL, SwapPhase.EVEN_VERTICAL)


class GridRouter:
    """
    Mutable routing state over a full Split-mode grid. Qubits are relabelled 0..N-1 in id order;
    the router moves them with odd-even transposition sorts along rows or junction columns and
    records every non-empty step it takes.
    """

    logger = logging.getLogger(__name__)

    def __init__(self, layout: TrapLayout, source: QubitConfig, target: QubitConfig,
                 duration: float = DEFAULT_SWAP_TIME):
        if source.get_chain_mode() != ChainMode.SPLIT or target.get_chain_mode() != ChainMode.SPLIT:
            raise RoutingError('grid routing works on Split-mode configs')
        if not source.is_full() or not target.is_full():
            raise RoutingError('grid routing needs exactly one qubit in every zone')
        if source.get_qubits() != target.get_qubits():
            raise RoutingError('source and target hold different qubit sets')

        self.layout = layout
        self.duration = duration
        self.steps = []
        self.stats = RoutingStats()

        m, n = layout.get_m(), layout.get_n()
        ids = np.array(source.get_qubits(), dtype=np.int64)
        self.grid = np.searchsorted(ids, source.to_grid())
        target_zones = np.array([target.zone_of(int(qubit)) for qubit in ids], dtype=np.int64)
        self.target_i, self.target_j = np.divmod(target_zones, n)

        i, j = np.meshgrid(np.arange(m), np.arange(n), indexing='ij')
        self.lower_parity = (i + j) % 2

    def get_steps(self) -> List[SwapStep]:
        return self.steps

    def get_stats(self) -> RoutingStats:
        return self.stats

    def emit(self, phase: SwapPhase, mask: np.ndarray):
        self.steps.append(SwapStep(phase, mask.reshape(-1), self.duration))

    def sort_rows(self, keys: np.ndarray, label: str) -> int:
        """
        Odd-even sorts every row by the per-qubit keys, all rows in parallel.
        """
        return self._sort(keys, label, horizontal=True)

    def sort_columns(self, keys: np.ndarray, label: str) -> int:
        """
        Odd-even sorts every junction column by the per-qubit keys, all columns in parallel.
        """
        return self._sort(keys, label, horizontal=False)

    def swap_within_segments(self, phase: SwapPhase) -> bool:
        """
        Swaps every horizontal pair of the phase that stays inside one segment.
        """
        k = self.layout.get_k()
        m = self.layout.get_m()
        inside = (np.arange(m - 1) % k != k - 1)[:, np.newaxis]
        pairs = inside & (self.lower_parity[:-1, :] == phase.pair_parity())
        if not pairs.any():
            return False
        self._apply(pairs, horizontal=True)
        self.emit(phase, self._mask(pairs, horizontal=True))
        return True

    def _sort(self, keys: np.ndarray, label: str, horizontal: bool) -> int:
        phases = HORIZONTAL_PHASES if horizontal else VERTICAL_PHASES
        line_length = self.layout.get_m() if horizontal else self.layout.get_n()
        allowed = None if horizontal else self.layout.junction_mask[:, :-1]
        taken = 0
        idle = 0
        rounds = 0
        while idle < 2:
            phase = phases[rounds % 2]
            rounds += 1
            current = keys[self.grid]
            if horizontal:
                swaps = current[:-1, :] > current[1:, :]
                parity = self.lower_parity[:-1, :]
            else:
                swaps = (current[:, :-1] > current[:, 1:]) & allowed
                parity = self.lower_parity[:, :-1]
            swaps &= parity == phase.pair_parity()
            if not swaps.any():
                idle += 1
                continue
            idle = 0
            self._apply(swaps, horizontal)
            self.emit(phase, self._mask(swaps, horizontal))
            taken += 1
            if rounds > line_length + 2:
                raise RoutingError(f'{label} sort did not settle within {line_length} steps')
        self.stats.add(label, taken)
        self.logger.debug(f'{label} sort: {taken} steps')
        return taken

    def _apply(self, swaps: np.ndarray, horizontal: bool):
        lower_i, lower_j = np.nonzero(swaps)
        upper_i, upper_j = (lower_i + 1, lower_j) if horizontal else (lower_i, lower_j + 1)
        held = self.grid[lower_i, lower_j].copy()
        self.grid[lower_i, lower_j] = self.grid[upper_i, upper_j]
        self.grid[upper_i, upper_j] = held

    def _mask(self, swaps: np.ndarray, horizontal: bool) -> np.ndarray:
        mask = np.zeros(self.grid.shape, dtype=bool)
        if horizontal:
            mask[:-1, :] |= swaps
            mask[1:, :] |= swaps
        else:
            mask[:, :-1] |= swaps
            mask[:, 1:] |= swaps
        return mask


def _check_same_layout(source: QubitConfig, target: QubitConfig) -> TrapLayout:
    if source.get_layout() != target.get_layout():
        raise RoutingError(f'source lives on {source.get_layout()}, target on {target.get_layout()}')
    return source.get_layout()


def _finish(layout: TrapLayout, router: GridRouter, source: QubitConfig, target: QubitConfig,
            bound: int, kind: str) -> SwapSchedule:
    schedule = SwapSchedule(layout, router.get_steps(), source, target, bound, router.get_stats())
    if len(schedule) > bound:
        raise RoutingError(f'{kind} schedule took {len(schedule)} steps, bound is {bound}')
    verify(schedule)
    logger.info(f'{kind} schedule on {layout}: {len(schedule)} steps (bound {bound}; {schedule.get_stats()})')
    return schedule


def plan_1d(source: Sequence[int], target: Sequence[int], duration: float = DEFAULT_SWAP_TIME) -> SwapSchedule:
    """
    Odd-even transposition sort of a linear array: source[x] is the qubit held by zone x before
    routing and target[x] the qubit it must hold afterwards. At most N steps.
    """
    if sorted(source) != sorted(target):
        raise RoutingError('source and target are not permutations of the same qubits')
    if len(set(source)) != len(source):
        raise RoutingError('source repeats a qubit id')
    if any(q < 0 for q in source):
        raise RoutingError('qubit ids must be non-negative')
    layout = linear_layout(len(source))
    source_config = QubitConfig.from_sequence(layout, source)
    target_config = QubitConfig.from_sequence(layout, target)
    router = GridRouter(layout, source_config, target_config, duration)
    router.sort_rows(router.target_i, 'row')
    return _finish(layout, router, source_config, target_config, layout.get_zone_count(), '1d')


def _route_row_first(layout: TrapLayout, source: QubitConfig, target: QubitConfig, duration: float) -> GridRouter:
    router = GridRouter(layout, source, target, duration)
    grid = router.grid
    assignment = column_assignment(router.target_j[grid].T)
    keys = np.empty(layout.get_zone_count(), dtype=np.int64)
    keys[grid.T.reshape(-1)] = assignment.reshape(-1)
    router.sort_rows(keys, 'row')
    router.sort_columns(router.target_j, 'column')
    router.sort_rows(router.target_i, 'final_row')
    return router


def _route_column_first(layout: TrapLayout, source: QubitConfig, target: QubitConfig, duration: float) -> GridRouter:
    router = GridRouter(layout, source, target, duration)
    grid = router.grid
    assignment = column_assignment(router.target_i[grid])
    keys = np.empty(layout.get_zone_count(), dtype=np.int64)
    keys[grid.reshape(-1)] = assignment.reshape(-1)
    router.sort_columns(keys, 'column')
    router.sort_rows(router.target_i, 'row')
    router.sort_columns(router.target_j, 'final_column')
    return router


def plan_2d_regular(layout: TrapLayout, source: QubitConfig, target: QubitConfig,
                    duration: float = DEFAULT_SWAP_TIME) -> SwapSchedule:
    """
    Three-phase routing on a regular grid with one qubit per zone, every zone a junction. Plans
    both row-column-row (at most 2m + n steps) and column-row-column (at most 2n + m steps) and
    keeps the shorter; ties go to row-column-row.
    """
    if layout.get_k() != 1:
        raise RoutingError(f'regular routing needs every zone to be a junction, got k={layout.get_k()}')
    if _check_same_layout(source, target) != layout:
        raise RoutingError(f'configs do not live on {layout}')
    m, n = layout.get_m(), layout.get_n()
    row_first = _route_row_first(layout, source, target, duration)
    column_first = _route_column_first(layout, source, target, duration)
    if len(column_first.get_steps()) < len(row_first.get_steps()):
        return _finish(layout, column_first, source, target, 2 * n + m, 'column-first 2d')
    return _finish(layout, row_first, source, target, 2 * m + n, 'row-first 2d')


def _chain_mask(layout: TrapLayout, config: QubitConfig) -> np.ndarray:
    mask = np.zeros(layout.get_zone_count(), dtype=bool)
    for zone in chain_zones(config):
        mask[zone] = True
        mask[zone - layout.get_n()] = True
    return mask


def _visiting_order(layout: TrapLayout) -> np.ndarray:
    """
    visits[t, s, j]: offset inside segment s of row j whose qubit sits on the junction after t
    within-segment transitions. Each transition is an odd then an even in-segment swap step.
    """
    m, n, k = layout.get_m(), layout.get_n(), layout.get_k()
    i, j = np.meshgrid(np.arange(m), np.arange(n), indexing='ij')
    offsets = i % k
    parity = (i + j) % 2
    inside = (np.arange(m - 1) % k != k - 1)[:, np.newaxis]
    visits = np.empty((k, m // k, n), dtype=np.int64)
    for t in range(k):
        visits[t] = offsets[::k, :]
        for phase in HORIZONTAL_PHASES:
            lower_i, lower_j = np.nonzero(inside & (parity[:-1, :] == phase.pair_parity()))
            held = offsets[lower_i, lower_j].copy()
            offsets[lower_i, lower_j] = offsets[lower_i + 1, lower_j]
            offsets[lower_i + 1, lower_j] = held
    return visits


def plan_2d_realistic(layout: TrapLayout, source: QubitConfig, target: QubitConfig,
                      duration: float = DEFAULT_SWAP_TIME) -> SwapSchedule:
    """
    Routing on a trap with one junction per k zones, between Chained-mode configs.

    Chains are split, every row is sorted so that each junction column holds qubits bound for
    distinct rows at every turn, then the k offsets of each segment take turns on the junction:
    a vertical sort moves the qubits on the junctions to their target rows and an in-segment
    transition brings the next offset onto the junction. A final row sort and a merge finish the
    job. Rows whose qubits already stay in their row skip straight to the final row sort.
    """
    if _check_same_layout(source, target) != layout:
        raise RoutingError(f'configs do not live on {layout}')
    if source.get_chain_mode() != ChainMode.CHAINED or target.get_chain_mode() != ChainMode.CHAINED:
        raise RoutingError('realistic routing runs between Chained-mode configs')
    if layout.get_k() < 2:
        raise RoutingError('realistic routing needs at least one gate zone per segment (k >= 2)')
    try:
        source_split = split_config(source)
        target_split = split_config(target)
    except ConfigMismatchError as error:
        raise RoutingError(f'cannot split configs: {error}')

    m, n, k = layout.get_m(), layout.get_n(), layout.get_k()
    router = GridRouter(layout, source_split, target_split, duration)
    router.emit(SwapPhase.SPLIT, _chain_mask(layout, source))
    router.get_stats().add('split', 1)

    grid = router.grid
    if np.array_equal(router.target_j[grid], np.broadcast_to(np.arange(n), (m, n))):
        router.sort_rows(router.target_i, 'final_row')
    else:
        visits = _visiting_order(layout)
        assignment = column_assignment(router.target_j[grid].T)
        segment, turn = np.divmod(assignment, k)
        rows = np.broadcast_to(np.arange(n)[:, np.newaxis], assignment.shape)
        positions = segment * k + visits[turn, segment, rows]
        keys = np.empty(layout.get_zone_count(), dtype=np.int64)
        keys[grid.T.reshape(-1)] = positions.reshape(-1)
        router.sort_rows(keys, 'row')

        for t in range(k):
            if t > 0:
                taken = sum(router.swap_within_segments(phase) for phase in HORIZONTAL_PHASES)
                router.get_stats().add('transition', taken)
            router.sort_columns(router.target_j, 'column')
        router.sort_rows(router.target_i, 'final_row')

    router.emit(SwapPhase.MERGE, _chain_mask(layout, target))
    router.get_stats().add('merge', 1)
    return _finish(layout, router, source, target, 2 * m + k * n + 2 * k, 'realistic')


class WorstCase:
    def __init__(self, name: str, permutation: List[int], steps: int):
        self.name = name
        self.permutation = permutation
        self.steps = steps

    def get_name(self) -> str:
        return self.name

    def get_permutation(self) -> List[int]:
        return self.permutation

    def get_steps(self) -> int:
        return self.steps

    def __str__(self) -> str:
        return f'WorstCase({self.name}, {self.steps} steps)'


def candidate_permutations(layout: TrapLayout, seeds: Sequence[int] = range(8)) -> List[tuple]:
    """
    The searched family: full reversal, the transpose-like reordering (target zone (i, j) gets the
    qubit with column-major index of (i, j)) on 2D layouts, and seeded random permutations.
    """
    size = layout.get_zone_count()
    family = [('reversal', list(range(size - 1, -1, -1)))]
    if layout.get_n() > 1 and layout.get_m() > 1:
        m, n = layout.get_m(), layout.get_n()
        family.append(('transpose', [j * m + i for i in range(m) for j in range(n)]))
    for seed in seeds:
        family.append((f'random:{seed}', [int(q) for q in np.random.default_rng(seed).permutation(size)]))
    return family


def planner_for(layout: TrapLayout, duration: float = DEFAULT_SWAP_TIME) -> Callable[[List[int]], SwapSchedule]:
    """
    Routes the identity arrangement of qubits 0..N-1 to a permuted one on the given layout, with
    the planner that fits it.
    """
    size = layout.get_zone_count()
    identity = list(range(size))
    if layout.get_n() == 1 and layout.get_k() == 1:
        return lambda order: plan_1d(identity, order, duration)
    if layout.get_k() == 1:
        source = QubitConfig.from_sequence(layout, identity)
        return lambda order: plan_2d_regular(layout, source, QubitConfig.from_sequence(layout, order), duration)
    source = chained_config(layout, identity)
    return lambda order: plan_2d_realistic(layout, source, chained_config(layout, order), duration)


def worst_case_permutation(layout: TrapLayout, seeds: Sequence[int] = range(8)) -> WorstCase:
    plan = planner_for(layout)
    worst = None
    for name, order in candidate_permutations(layout, seeds):
        steps = len(plan(order))
        logger.debug(f'{name} permutation on {layout}: {steps} steps')
        if worst is None or steps > worst.get_steps():
            worst = WorstCase(name, order, steps)
    logger.info(f'worst case on {layout}: {worst}')
    return worst


def parse_permutation(text: str, size: int, default_seed: int = 0) -> List[int]:
    """
    Target arrangement named on the command line: identity, reversal, random (seeded with
    default_seed), random:<seed>, or file:<path> holding whitespace or comma separated qubit ids.
    """
    text = str(text).strip()
    if text == 'identity':
        return list(range(size))
    if text == 'reversal':
        return list(range(size - 1, -1, -1))
    if text == 'random' or text.startswith('random:'):
        seed = default_seed if text == 'random' else int(text.split(':', 1)[1])
        return [int(q) for q in np.random.default_rng(seed).permutation(size)]
    if text.startswith('file:'):
        with open(text[len('file:'):], 'r') as perm_file:
            order = [int(token) for token in perm_file.read().replace(',', ' ').split()]
        if sorted(order) != list(range(size)):
            raise RoutingError(f'{text} is not a permutation of 0..{size - 1}')
        return order
    raise RoutingError(f'unknown permutation: {text}')
