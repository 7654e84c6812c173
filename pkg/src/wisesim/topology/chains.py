from typing import Iterable, List, Sequence

from wisesim.topology.api import TrapLayout, QubitConfig, ChainMode, ConfigMismatchError, LayoutError


def chain_slots(layout: TrapLayout) -> List[int]:
    """
    Gate zones that may hold a two-qubit chain: odd offsets within every segment. A chain in
    slot zone (i, j) splits into (i - 1, j) and (i, j).
    """
    if layout.get_k() < 2:
        raise LayoutError('chained storage needs at least one gate zone per segment (k >= 2)')
    return [layout.zone_index(i, j) for i in range(layout.get_m()) for j in range(layout.get_n())
            if (i % layout.get_k()) % 2 == 1]


def chained_config(layout: TrapLayout, qubit_order: Sequence[int]) -> QubitConfig:
    """
    Canonical Chained placement of m * n qubits: every segment row holds k qubits, packed as
    two-qubit chains at offsets 1, 3, ... and, for odd k, a single qubit at offset k - 1.
    Qubits are dealt out row by row, segment by segment, left to right.
    """
    k = layout.get_k()
    if k < 2:
        raise LayoutError('chained storage needs at least one gate zone per segment (k >= 2)')
    if len(qubit_order) != layout.get_zone_count():
        raise ConfigMismatchError(f'{layout} stores {layout.get_zone_count()} qubits, got {len(qubit_order)}')

    occupancy = [()] * layout.get_zone_count()
    qubits = iter(qubit_order)
    for j in range(layout.get_n()):
        for segment in range(layout.get_segment_count()):
            base = segment * k
            for offset in range(1, k, 2):
                occupancy[layout.zone_index(base + offset, j)] = (next(qubits), next(qubits))
            if k % 2 == 1:
                occupancy[layout.zone_index(base + k - 1, j)] = (next(qubits),)
    return QubitConfig(layout, occupancy, ChainMode.CHAINED)


def split_config(config: QubitConfig) -> QubitConfig:
    """
    Splits every two-qubit chain: the left member moves into the empty zone on its left.
    """
    if config.get_chain_mode() != ChainMode.CHAINED:
        raise ConfigMismatchError('split needs a Chained-mode config')
    layout = config.get_layout()
    occupancy = [list(zone) for zone in config.get_occupancy()]
    for zone, qubits in enumerate(config.get_occupancy()):
        if len(qubits) == 2:
            left = _left_partner(layout, zone)
            if config.get_zone(left):
                raise ConfigMismatchError(f'cannot split chain in zone {zone}: zone {left} is occupied')
            occupancy[left] = [qubits[0]]
            occupancy[zone] = [qubits[1]]
    return QubitConfig(layout, occupancy, ChainMode.SPLIT)


def merge_config(config: QubitConfig, slots: Iterable[int]) -> QubitConfig:
    """
    Merges the qubit left of each given chain slot into that slot, forming [left, right] chains.
    """
    if config.get_chain_mode() != ChainMode.SPLIT:
        raise ConfigMismatchError('merge needs a Split-mode config')
    layout = config.get_layout()
    occupancy = [list(zone) for zone in config.get_occupancy()]
    for zone in slots:
        left = _left_partner(layout, zone)
        if len(occupancy[left]) != 1 or len(occupancy[zone]) != 1:
            raise ConfigMismatchError(f'cannot merge zones {left} and {zone}: each must hold one qubit')
        occupancy[zone] = occupancy[left] + occupancy[zone]
        occupancy[left] = []
    return QubitConfig(layout, occupancy, ChainMode.CHAINED)


def chain_zones(config: QubitConfig) -> List[int]:
    return [zone for zone, qubits in enumerate(config.get_occupancy()) if len(qubits) == 2]


def _left_partner(layout: TrapLayout, zone: int) -> int:
    i, j = layout.coords(zone)
    if layout.get_k() < 2 or (i % layout.get_k()) % 2 != 1:
        raise ConfigMismatchError(f'zone {zone} is not a chain slot of {layout}')
    return layout.zone_index(i - 1, j)
