import json
import math

import pytest
from pytest_mock import MockFixture

from wisesim.params.api import BaseInputs, SystemParams, MemoryErrorModel, MemoryErrorForm, ParamsError, \
    FIELDS_BY_NAME
from wisesim.params.budget import derive, reconfig_time, memory_error, system_speed, shim_overhead, io_budget, \
    table_report, sweep_reconfig, SWEEP_COLUMNS
from wisesim.topology.api import TrapLayout
from wisesim.topology.layout import build_layout
from wisesim.wiring.api import SwitchMode


@pytest.fixture(scope='module')
def reference() -> SystemParams:
    return derive(BaseInputs())


def test_reference_table_counts(reference: SystemParams):
    assert 1026 == reference.n_qubits
    assert (54, 19) == (reference.m, reference.n)
    assert 171 == reference.n_jz
    assert 855 == reference.n_gz
    assert 11970 == reference.n_de
    assert 10260 == reference.n_se
    assert 22230 == reference.n_e
    assert 34200 == reference.n_tg
    assert 120 == reference.n_ddac
    assert 81 == reference.n_sdac
    assert 1026 == reference.n_sw
    assert 222 == reference.reconfig_steps


def test_reference_table_values(reference: SystemParams):
    assert pytest.approx(85.5e-6) == reference.tg_area_total
    assert pytest.approx(102.6e-6) == reference.cap_area_total
    assert pytest.approx(164.16e-6) == reference.area_total
    assert pytest.approx(30e-12) == reference.capacitance
    assert pytest.approx(3.333e-3, rel=1e-3) == reference.rf_pickup
    assert pytest.approx(0.2) == reference.charge_injection_field
    assert pytest.approx(20.52e-6) == reference.t_ss
    assert pytest.approx(384e-6) == reference.t_sc
    assert pytest.approx(22.2e-3) == reference.t_r
    assert pytest.approx(24.66e-3, rel=1e-3) == reference.drift_reconfig
    assert pytest.approx(0.1111e-3, rel=1e-3) == reference.drift_gate
    assert pytest.approx(385e-6) == reference.t_tag_1q
    assert pytest.approx(484e-6) == reference.t_tag_2q
    assert pytest.approx(2597.4, rel=1e-4) == reference.max_speed
    assert pytest.approx(44.08, rel=1e-3) == reference.min_speed


def test_reference_table_display(reference: SystemParams):
    shown = table_report(reference).set_index('symbol')['display']
    assert 86 == shown['A_t,tg']
    assert 103 == shown['A_t,c']
    assert 164 == shown['A_t']
    assert 30 == shown['C']
    assert 3 == shown['V_s,RF']
    assert 21 == shown['t_ss']
    assert 384 == shown['t_sc']
    assert 22 == shown['t_r']
    assert 25 == shown['dE_r']
    assert 0.1 == shown['dE_2q']
    assert 0.2 == shown['dE_c']
    assert 385 == shown['t_tag,1q']
    assert 484 == shown['t_tag,2q']


def test_speed_display():
    assert 2600 == FIELDS_BY_NAME['max_speed'].display(2597.4)
    assert 40 == FIELDS_BY_NAME['min_speed'].display(44.08)


def test_tiny_linear_table():
    p = derive(BaseInputs(n_qubits=4, k=1, n_de_gz=0, n_de_jz=1, n_se_z=1, demux_order=2))
    assert (1, 4) == (p.m, p.n)
    assert 4 == p.n_jz
    assert 0 == p.n_gz
    assert 4 == p.n_de
    assert 4 == p.n_se
    assert 4 == p.n_ddac
    assert 4 == p.n_sdac
    assert 6 == p.reconfig_steps


def test_zero_electrode_counts():
    p = derive(BaseInputs(n_de_gz=0, n_de_jz=0, n_se_z=0))
    assert 0 == p.n_e
    assert 0 == p.n_tg
    assert 0 == p.n_sdac
    assert 0 == p.n_ddac
    assert 0 == p.cap_area_total


def test_single_per_zone_gates():
    p = derive(BaseInputs(switch_mode=SwitchMode.SINGLE_PER_ZONE))
    assert 11286 == p.n_tg


def test_invalid_inputs():
    with pytest.raises(ParamsError):
        BaseInputs(m=10, n=2, k=6)
    with pytest.raises(ParamsError):
        BaseInputs(m=12)
    with pytest.raises(ParamsError):
        BaseInputs(t_0=0)
    with pytest.raises(ParamsError):
        BaseInputs(n_se_z=-1)
    p = derive(BaseInputs(m=12, n=4, k=6))
    assert 48 == p.n_qubits


def test_reconfig_time():
    reconfig = reconfig_time(build_layout(1000, 6), 100e-6)
    assert 222 == reconfig['steps']
    assert pytest.approx(22.2e-3) == reconfig['seconds']
    assert reconfig['estimate_steps'] == pytest.approx(222, rel=0.01)

    linear = reconfig_time(TrapLayout(8, 1, 1), 100e-6)
    assert 17 == linear['steps']


def test_memory_model():
    model = MemoryErrorModel()
    assert MemoryErrorForm.LINEAR == model.get_form()
    assert pytest.approx(2e-5, rel=1e-12) == memory_error(model, 22e-3)
    assert 0 == memory_error(model, 0)
    assert pytest.approx(4e-5) == memory_error(model, 44e-3)
    with pytest.raises(ParamsError):
        memory_error(model, -1e-3)

    quadratic = MemoryErrorModel(MemoryErrorForm.QUADRATIC)
    assert pytest.approx(2e-5) == quadratic.error_at(22e-3)
    assert pytest.approx(8e-5) == quadratic.error_at(44e-3)
    assert MemoryErrorForm.QUADRATIC == MemoryErrorForm.parse('Quadratic')
    with pytest.raises(ParamsError):
        MemoryErrorForm.parse('cubic')


def test_system_speed(reference: SystemParams):
    speed = system_speed(reference, t_r=0)
    assert pytest.approx(1 / 484e-6) == speed['min_layers_per_s']
    assert not speed['max_unbounded']


def test_unbounded_speed(mocker: MockFixture):
    p = mocker.MagicMock(SystemParams)
    p.t_sc = 0.0
    p.t_1q = 0.0
    p.t_2q = 100e-6
    p.t_r = 22e-3
    speed = system_speed(p)
    assert math.isinf(speed['max_layers_per_s'])
    assert speed['max_unbounded']
    assert not speed['min_unbounded']


def test_shim_overhead():
    assert pytest.approx(0.175, abs=1e-3) == shim_overhead(10, 384e-6, 22e-3)
    assert 0 == shim_overhead(0, 384e-6, 22e-3)
    assert pytest.approx(2 * shim_overhead(10, 384e-6, 22e-3)) == shim_overhead(20, 384e-6, 22e-3)
    with pytest.raises(ParamsError):
        shim_overhead(10, 384e-6, 0)


def test_io_budget(reference: SystemParams):
    assert 211 == io_budget(reference)['total']
    assert 201 == io_budget(reference, aux_lines=0)['total']
    with pytest.raises(ParamsError):
        io_budget(reference, aux_lines=-1)


def test_params_round_trip(reference: SystemParams):
    restored = SystemParams.from_dict(json.loads(json.dumps(reference.to_dict())))
    assert reference == restored
    assert reference == derive(restored.get_base())


def test_sweep_anchor_and_scaling():
    frame = sweep_reconfig([6], [1000, 2000, 4000], 100e-6, MemoryErrorModel(), workers=2)
    assert SWEEP_COLUMNS == list(frame.columns)
    rows = frame.set_index('N')
    assert pytest.approx(22e-3, rel=0.05) == rows.loc[1000, 't_r_s']
    assert pytest.approx(2e-5, rel=0.05) == rows.loc[1000, 'mem_error']
    assert pytest.approx(math.sqrt(2), rel=0.05) == rows.loc[2000, 't_r_s'] / rows.loc[1000, 't_r_s']
    assert pytest.approx(2, rel=0.05) == rows.loc[4000, 't_r_s'] / rows.loc[1000, 't_r_s']


def test_sweep_grid():
    frame = sweep_reconfig([2, 4, 6, 8], [100, 1000], 100e-6, MemoryErrorModel())
    assert 8 == len(frame)
    for row in frame.itertuples():
        estimate = math.sqrt(8 * row.k * row.m * row.n)
        assert abs(row.steps - estimate) / estimate < 0.05
    assert 1 == len(sweep_reconfig([1], [2], 100e-6, MemoryErrorModel()))


def test_sweep_needs_points():
    with pytest.raises(ParamsError):
        sweep_reconfig([], [1000], 100e-6, MemoryErrorModel())
    with pytest.raises(ParamsError):
        sweep_reconfig([6], [], 100e-6, MemoryErrorModel())
