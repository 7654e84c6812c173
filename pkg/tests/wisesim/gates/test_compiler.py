import math

import numpy as np
import pytest

from wisesim.gates.api import Gate, GateKind, GateMode, GateCompileError, RoutingRequiredError, RabiProfile
from wisesim.gates.compiler import parse_angle, parse_circuit, compile_layer, is_merge_pair, layer_duration, \
    requires_shim_charge, hz_strength, plan_continuous
from wisesim.params.api import BaseInputs
from wisesim.params.budget import derive
from wisesim.topology.api import TrapLayout, QubitConfig
from wisesim.topology.chains import chained_config
from wisesim.topology.layout import linear_layout


@pytest.fixture(scope='module')
def reference():
    return derive(BaseInputs())


def test_parse_angle():
    assert pytest.approx(math.pi / 2) == parse_angle('pi/2')
    assert pytest.approx(-math.pi) == parse_angle('-pi')
    assert pytest.approx(math.pi / 2) == parse_angle('0.5pi')
    assert pytest.approx(3 * math.pi / 4) == parse_angle('3*pi/4')
    assert pytest.approx(1.25) == parse_angle('1.25')
    with pytest.raises(GateCompileError):
        parse_angle('tau')


def test_parse_circuit():
    text = '''
    # one layer per line
    SQ phi=pi/2 q=1,5,9
    SQZ q=0
    TQ q=0-1,4-5 phi=0
    SQC 2:pi/4,3:-pi/8
    '''
    layers = parse_circuit(text)
    assert 4 == len(layers)
    assert [Gate(GateKind.SQ_PHI, [q], math.pi / 2) for q in (1, 5, 9)] == layers[0]
    assert GateKind.SQ_Z == layers[1][0].get_kind()
    assert [(0, 1), (4, 5)] == [gate.get_qubits() for gate in layers[2]]
    assert pytest.approx(-math.pi / 8) == layers[3][1].get_theta()

    with pytest.raises(GateCompileError):
        parse_circuit('XX q=1')
    with pytest.raises(GateCompileError):
        parse_circuit('SQ phi=0')
    with pytest.raises(GateCompileError):
        parse_circuit('TQ q=1-2-3')


def test_single_qubit_layer():
    layout = linear_layout(12)
    config = QubitConfig.from_sequence(layout, list(range(12)))
    layer = compile_layer([Gate(GateKind.SQ_PHI, [q], math.pi / 2) for q in (1, 5, 9)], config)
    assert [1, 5, 9] == layer.get_active_zones()
    assert pytest.approx(math.pi / 2) == layer.get_phi()
    assert GateKind.SQ_PHI.name == layer.to_dict()['kind']


def test_layer_rules():
    layout = linear_layout(6)
    config = QubitConfig.from_sequence(layout, list(range(6)))
    with pytest.raises(GateCompileError):
        compile_layer([], config)
    with pytest.raises(GateCompileError):
        compile_layer([Gate(GateKind.SQ_PHI, [0]), Gate(GateKind.SQ_Z, [1])], config)
    with pytest.raises(GateCompileError):
        compile_layer([Gate(GateKind.SQ_PHI, [0], 0), Gate(GateKind.SQ_PHI, [1], 1.0)], config)
    with pytest.raises(GateCompileError):
        compile_layer([Gate(GateKind.SQ_PHI, [0]), Gate(GateKind.SQ_PHI, [0])], config)
    with pytest.raises(GateCompileError):
        compile_layer([Gate(GateKind.SQ_PHI, [7])], config)
    with pytest.raises(GateCompileError):
        Gate(GateKind.TQ, [1])


def test_two_qubit_layer_split():
    layout = linear_layout(6)
    config = QubitConfig.from_sequence(layout, [0, 1, 2, 3, 4, 5])
    layer = compile_layer([Gate(GateKind.TQ, [0, 1]), Gate(GateKind.TQ, [3, 2])], config)
    assert [0, 1, 2, 3] == layer.get_active_zones()
    assert [(0, 1), (2, 3)] == layer.get_pairs()

    with pytest.raises(RoutingRequiredError, match='routing required'):
        compile_layer([Gate(GateKind.TQ, [1, 2])], config)
    with pytest.raises(RoutingRequiredError):
        compile_layer([Gate(GateKind.TQ, [0, 5])], config)


def test_two_qubit_layer_chained():
    layout = TrapLayout(6, 2, 3)
    config = chained_config(layout, list(range(12)))
    layer = compile_layer([Gate(GateKind.TQ, [0, 1]), Gate(GateKind.TQ, [6, 7])], config)
    assert [layout.zone_index(1, 0), layout.zone_index(1, 1)] == layer.get_active_zones()
    with pytest.raises(RoutingRequiredError):
        compile_layer([Gate(GateKind.TQ, [1, 2])], config)


def test_single_qubit_gate_on_chain():
    layout = TrapLayout(6, 2, 3)
    config = chained_config(layout, list(range(12)))
    with pytest.raises(GateCompileError):
        compile_layer([Gate(GateKind.SQ_PHI, [0])], config)
    layer = compile_layer([Gate(GateKind.SQ_PHI, [0]), Gate(GateKind.SQ_PHI, [1])], config)
    assert [layout.zone_index(1, 0)] == layer.get_active_zones()
    layer = compile_layer([Gate(GateKind.SQ_PHI, [2])], config)
    assert [layout.zone_index(2, 0)] == layer.get_active_zones()


def test_merge_pairs():
    layout = TrapLayout(6, 2, 3)
    assert is_merge_pair(layout, layout.zone_index(0, 0), layout.zone_index(1, 0))
    assert not is_merge_pair(layout, layout.zone_index(1, 0), layout.zone_index(2, 0))
    assert not is_merge_pair(layout, layout.zone_index(0, 0), layout.zone_index(0, 1))
    assert is_merge_pair(linear_layout(4), 2, 3)
    assert not is_merge_pair(linear_layout(4), 1, 2)


def test_layer_durations(reference):
    config = QubitConfig.from_sequence(linear_layout(4), [0, 1, 2, 3])
    single = compile_layer([Gate(GateKind.SQ_PHI, [0])], config)
    every = compile_layer([Gate(GateKind.SQ_PHI, [q]) for q in range(4)], config)
    pair = compile_layer([Gate(GateKind.TQ, [0, 1])], config)
    continuous = compile_layer([Gate(GateKind.SQ_CONTINUOUS, [2], theta=0.3)], config)

    assert pytest.approx(385e-6) == layer_duration(single, reference)
    assert layer_duration(single, reference) == layer_duration(every, reference)
    assert pytest.approx(484e-6) == layer_duration(pair, reference)
    assert pytest.approx(1e-6) == layer_duration(single, reference, GateMode.PARALLELIZATION)
    assert pytest.approx(100e-6) == layer_duration(pair, reference, GateMode.PARALLELIZATION)
    with pytest.raises(GateCompileError):
        layer_duration(continuous, reference, GateMode.PARALLELIZATION)

    assert requires_shim_charge(single, GateMode.DEMUX)
    assert not requires_shim_charge(single, GateMode.PARALLELIZATION)
    assert requires_shim_charge(continuous, GateMode.PARALLELIZATION)
    assert GateMode.PARALLELIZATION == GateMode.parse('parallelization')


def test_hz_strength():
    assert pytest.approx(2.0) == hz_strength(2.0, 1.0)
    with pytest.raises(GateCompileError):
        hz_strength(1.0, 0.0)


def test_plan_continuous(reference):
    layout = linear_layout(4)
    config = QubitConfig.from_sequence(layout, [0, 1, 2, 3])
    layer = compile_layer([Gate(GateKind.SQ_CONTINUOUS, [1], theta=math.pi / 2),
                           Gate(GateKind.SQ_CONTINUOUS, [3], theta=-math.pi / 4)], config)
    assert {1: math.pi / 2, 3: -math.pi / 4} == layer.get_angles()

    omega0 = 2 * math.pi / reference.t_1q
    profile = RabiProfile.laser(omega0, 10e-6)
    plan = plan_continuous(layer, profile, reference).set_index('zone')
    assert [1, 3] == plan.index.tolist()
    assert not plan.loc[1, 'phase_flip']
    assert plan.loc[3, 'phase_flip']
    assert pytest.approx(abs(-math.pi / 4) / reference.t_1q) == plan.loc[3, 'omega']
    assert pytest.approx(10e-6 * math.sqrt(math.log(4))) == plan.loc[1, 'displacement']
    assert 0 == plan.loc[1, 'dac']
    assert 11 == plan.loc[1, 'slot']
    assert np.all(plan['displacement'] > 0)

    with pytest.raises(GateCompileError):
        plan_continuous(compile_layer([Gate(GateKind.SQ_PHI, [0])], config), profile, reference)
