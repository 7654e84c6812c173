import logging
import math
import re
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from wisesim.gates.api import Gate, GateKind, GateLayer, GateMode, GateCompileError, RoutingRequiredError, \
    RabiProfile
from wisesim.gates.rabi import solve_displacement
from wisesim.params.api import SystemParams
from wisesim.topology.api import QubitConfig, ChainMode, TrapLayout
from wisesim.wiring.api import DemuxConfig
from wisesim.wiring.demux import demux_schedule

logger = logging.getLogger(__name__)

_ANGLE = re.compile(r'^(?P<sign>[-+]?)(?:(?P<coef>[0-9.eE+-]+)\*?)?pi(?:/(?P<den>[0-9.eE+-]+))?$')


def parse_angle(text: str) -> float:
    """
    A float in radians or a multiple of pi such as pi/2, -pi, 0.5pi or 3*pi/4.
    """
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    match = _ANGLE.match(text)
    if match is None:
        raise GateCompileError(f'cannot parse angle: {text}')
    value = math.pi * float(match.group('coef') or 1.0) / float(match.group('den') or 1.0)
    return -value if match.group('sign') == '-' else value


def _fields(tokens: Sequence[str], line_no: int) -> Dict[str, str]:
    fields = {}
    for token in tokens:
        if '=' not in token:
            raise GateCompileError(f'line {line_no}: expected key=value, got {token}')
        key, value = token.split('=', 1)
        fields[key.strip().lower()] = value.strip()
    return fields


def _qubit_list(text: str, line_no: int) -> List[int]:
    try:
        return [int(q) for q in text.split(',') if q.strip()]
    except ValueError:
        raise GateCompileError(f'line {line_no}: bad qubit list {text}')


def parse_circuit(text: str) -> List[List[Gate]]:
    """
    One layer per line: 'SQ phi=<rad> q=<ids>', 'SQZ q=<ids>', 'TQ q=<a>-<b>,<c>-<d> [phi=<rad>]'
    or 'SQC <q>:<theta>,<q>:<theta>'. Blank lines and '#' comments are skipped.
    """
    layers = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        head = head.upper()
        if head == 'SQC':
            body = ' '.join(rest)
            if body.lower().startswith('q='):
                body = body[2:]
            gates = []
            for item in body.replace(' ', '').split(','):
                if not item:
                    continue
                if ':' not in item:
                    raise GateCompileError(f'line {line_no}: expected qubit:theta, got {item}')
                qubit, theta = item.split(':', 1)
                gates.append(Gate(GateKind.SQ_CONTINUOUS, [int(qubit)], theta=parse_angle(theta)))
            layers.append(gates)
            continue

        fields = _fields(rest, line_no)
        if 'q' not in fields:
            raise GateCompileError(f'line {line_no}: missing q=')
        phi = parse_angle(fields['phi']) if 'phi' in fields else 0.0
        if head == 'SQ':
            layers.append([Gate(GateKind.SQ_PHI, [q], phi) for q in _qubit_list(fields['q'], line_no)])
        elif head == 'SQZ':
            layers.append([Gate(GateKind.SQ_Z, [q]) for q in _qubit_list(fields['q'], line_no)])
        elif head == 'TQ':
            gates = []
            for pair in fields['q'].split(','):
                try:
                    first, second = (int(q) for q in pair.split('-'))
                except ValueError:
                    raise GateCompileError(f'line {line_no}: bad qubit pair {pair}')
                gates.append(Gate(GateKind.TQ, [first, second], phi))
            layers.append(gates)
        else:
            raise GateCompileError(f'line {line_no}: unknown gate kind {head}')
    return layers


def is_merge_pair(layout: TrapLayout, left: int, right: int) -> bool:
    """
    Whether two horizontally adjacent zones form a pair that can merge for a two-qubit gate: the
    right zone sits at an odd offset of its segment, or at an odd i when every zone is a junction.
    """
    li, lj = layout.coords(left)
    ri, rj = layout.coords(right)
    if lj != rj or ri != li + 1:
        return False
    k = layout.get_k()
    offset = ri % k if k > 1 else ri
    return offset % 2 == 1


def compile_layer(gates: Sequence[Gate], config: QubitConfig) -> GateLayer:
    if not gates:
        raise GateCompileError('empty gate layer')
    kinds = {gate.get_kind() for gate in gates}
    if len(kinds) != 1:
        raise GateCompileError(f'layer mixes gate kinds: {sorted(kind.name for kind in kinds)}')
    kind = kinds.pop()
    phis = {gate.get_phi() for gate in gates}
    if kind.is_discrete() and len(phis) != 1:
        raise GateCompileError(f'{kind.name} layer mixes phases: {sorted(phis)}')
    touched = [q for gate in gates for q in gate.get_qubits()]
    if len(set(touched)) != len(touched):
        raise GateCompileError('a qubit appears twice in one layer')

    layout = config.get_layout()
    mask = np.zeros(layout.get_zone_count(), dtype=bool)
    zones = {}
    for qubit in touched:
        try:
            zones[qubit] = config.zone_of(qubit)
        except KeyError:
            raise GateCompileError(f'qubit {qubit} is not in the current config')

    if kind == GateKind.TQ:
        pairs = []
        for gate in gates:
            first, second = gate.get_qubits()
            za, zb = zones[first], zones[second]
            if config.get_chain_mode() == ChainMode.CHAINED:
                if za != zb:
                    raise RoutingRequiredError(f'routing required: qubits {first} and {second} are not in one chain')
                mask[za] = True
                pairs.append((za,))
            else:
                left, right = min(za, zb), max(za, zb)
                if not is_merge_pair(layout, left, right):
                    raise RoutingRequiredError(f'routing required: qubits {first} and {second} sit in zones '
                                               f'{za} and {zb}, not a merge pair')
                mask[left] = mask[right] = True
                pairs.append((left, right))
        return GateLayer(kind, mask, gates[0].get_phi(), pairs=pairs)

    angles = {}
    for gate in gates:
        qubit = gate.get_qubits()[0]
        zone = zones[qubit]
        held = config.get_zone(zone)
        if len(held) > 1 and not all(q in zones for q in held):
            raise GateCompileError(f'single-qubit gate on qubit {qubit} would also act on its chain partner')
        if kind == GateKind.SQ_CONTINUOUS:
            if zone in angles and not math.isclose(angles[zone], gate.get_theta()):
                raise GateCompileError(f'chain in zone {zone} cannot take two different angles')
            angles[zone] = gate.get_theta()
        mask[zone] = True
    return GateLayer(kind, mask, None if kind == GateKind.SQ_CONTINUOUS else gates[0].get_phi(), angles=angles)


def requires_shim_charge(layer: GateLayer, mode: GateMode) -> bool:
    return mode == GateMode.DEMUX or layer.get_kind() == GateKind.SQ_CONTINUOUS


def layer_duration(layer: GateLayer, p: SystemParams, mode: GateMode = GateMode.DEMUX) -> float:
    """
    Wall-clock time of one layer. In demux mode every layer waits for a full shim charging cycle;
    in parallelization mode discrete layers reuse fixed shim settings and take only the pulse.
    Raises GateCompileError for a continuous layer in parallelization mode, since its per-zone
    angles have to be charged onto the shims.
    """
    pulse = p.t_2q if layer.get_kind() == GateKind.TQ else p.t_1q
    if mode == GateMode.DEMUX:
        return p.t_sc + pulse
    if layer.get_kind() == GateKind.SQ_CONTINUOUS:
        raise GateCompileError('continuous layers need shim charging, use demux mode')
    return pulse


def hz_strength(omega: float, delta: float) -> float:
    """
    Off-resonant light shift omega^2 / (2 delta) driving SQ_Z layers.
    """
    if delta == 0:
        raise GateCompileError('detuning must be non-zero')
    return omega ** 2 / (2 * delta)


def plan_continuous(layer: GateLayer, profile: RabiProfile, p: SystemParams) -> pd.DataFrame:
    """
    Per-zone drive plan of a continuous layer: the Rabi frequency |theta| / t_1q, the shim
    displacement that yields it, the phase flip for negative angles, and the demux DAC and slot
    that charge the zone's first shim electrode.
    """
    if layer.get_kind() != GateKind.SQ_CONTINUOUS:
        raise GateCompileError(f'{layer.get_kind().name} layer has no continuous angles')
    if p.t_1q <= 0:
        raise GateCompileError('continuous layers need a positive single-qubit pulse time')
    schedule = demux_schedule(DemuxConfig(p.demux_order, p.t_ec), p.n_se).get_assignments()
    rows = []
    for zone, theta in sorted(layer.get_angles().items()):
        omega = abs(theta) / p.t_1q
        shim = zone * p.n_se_z
        row = {
            'zone': zone,
            'theta': theta,
            'omega': omega,
            'phase_flip': theta < 0,
            'displacement': solve_displacement(profile, omega),
            'dac': -1,
            'slot': -1
        }
        if shim < len(schedule):
            row['dac'] = int(schedule['dac'].iloc[shim])
            row['slot'] = int(schedule['slot'].iloc[shim])
        rows.append(row)
    logger.debug(f'continuous layer over {len(rows)} zones')
    return pd.DataFrame(rows, columns=['zone', 'theta', 'omega', 'phase_flip', 'displacement', 'dac', 'slot'])
