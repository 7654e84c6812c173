import json
import logging
import math
from pathlib import Path
from typing import List

import toml

from wisesim.topology.api import TrapLayout, ElectrodeCounts, ZoneGeometry, LayoutError

logger = logging.getLogger(__name__)

LAYOUT_KEYS = ('n_qubits', 'k', 'n_de_gz', 'n_de_jz', 'n_se_z', 'zone_x_um', 'zone_y_um', 'ion_height_um')


def build_layout(n_qubits_target: int, k: int, electrodes: ElectrodeCounts = None,
                 geometry: ZoneGeometry = None) -> TrapLayout:
    """
    Smallest-reconfiguration-time grid holding at least n_qubits_target zones: minimizes the
    worst-case step count 2m + kn over row lengths m that are multiples of k. Ties go to the m
    closest to sqrt(k N / 2), then to the smaller zone count.
    """
    if k is None or k <= 0:
        raise LayoutError(f'k must be positive: {k}')
    if n_qubits_target is None or n_qubits_target < 2:
        raise LayoutError(f'need at least 2 qubits: {n_qubits_target}')

    continuous_m = math.sqrt(k * n_qubits_target / 2)
    best = None
    best_key = None
    max_m = k * math.ceil(n_qubits_target / k)
    for m in range(k, max_m + 1, k):
        n = math.ceil(n_qubits_target / m)
        key = (2 * m + k * n, abs(m - continuous_m), m * n)
        if best_key is None or key < best_key:
            best_key = key
            best = (m, n)

    m, n = best
    logger.debug(f'optimized layout for N={n_qubits_target}, k={k}: {m} x {n} ({best_key[0]} step bound)')
    return TrapLayout(m, n, k, electrodes, geometry)


def linear_layout(n_zones: int, electrodes: ElectrodeCounts = None, geometry: ZoneGeometry = None) -> TrapLayout:
    """
    A 1D array of zones laid out along x, every zone able to swap with its neighbours.
    """
    return TrapLayout(n_zones, 1, 1, electrodes, geometry)


def neighbors(layout: TrapLayout, zone: int) -> List[int]:
    i, j = layout.coords(zone)
    result = []
    for di, dj in ((-1, 0), (0, -1), (0, 1), (1, 0)):
        ni, nj = i + di, j + dj
        if 0 <= ni < layout.get_m() and 0 <= nj < layout.get_n():
            result.append(layout.zone_index(ni, nj))
    return result


def layout_from_config(values: dict) -> TrapLayout:
    missing = [key for key in LAYOUT_KEYS if key not in values]
    if missing:
        raise LayoutError(f'layout config is missing keys: {", ".join(missing)}')
    electrodes = ElectrodeCounts(values['n_de_gz'], values['n_de_jz'], values['n_se_z'])
    geometry = ZoneGeometry(float(values['zone_x_um']) * 1e-6, float(values['zone_y_um']) * 1e-6,
                            float(values['ion_height_um']) * 1e-6)
    return build_layout(int(values['n_qubits']), int(values['k']), electrodes, geometry)


def load_layout_config(path: Path) -> TrapLayout:
    values = toml.load(str(path))
    if 'layout' in values:
        values = values['layout']
    return layout_from_config(values)


def dump_layout_json(layout: TrapLayout) -> str:
    return json.dumps(layout.to_dict(), indent=2)
