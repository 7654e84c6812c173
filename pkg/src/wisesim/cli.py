import json
import logging
import math
import sys
from pathlib import Path
from typing import Optional

import fire
import pandas as pd

from wisesim.config import RunConfig, ConfigError
from wisesim.gates.api import GateKind, GateCompileError, RoutingRequiredError
from wisesim.gates.compiler import parse_circuit, compile_layer, layer_duration, requires_shim_charge, hz_strength, \
    plan_continuous
from wisesim.params.api import ParamsError
from wisesim.params.budget import derive, table_report, sweep_reconfig, system_speed, shim_overhead, io_budget
from wisesim.pulse.su2 import crosstalk_report, amplitude_report
from wisesim.routing.api import RoutingError, ScheduleVerificationError
from wisesim.routing.io import schedule_to_json, write_schedule_stream
from wisesim.routing.planner import plan_1d, plan_2d_regular, plan_2d_realistic, parse_permutation
from wisesim.topology.api import QubitConfig, LayoutError, ConfigMismatchError
from wisesim.topology.chains import chained_config
from wisesim.topology.layout import build_layout
from wisesim.utils import init_logging
from wisesim.wiring.api import DemuxCapacityError
from wisesim.wiring.demux import demux_schedule, analog_errors, demux_tradeoff
from wisesim.wiring.switch import switch_budget, required_rate, is_streaming_hidden

logger = logging.getLogger(__name__)

DEFAULT_EPS_GRID = (0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1)
DEFAULT_ORDERS = (2, 4, 8, 16, 32, 64, 128, 256, 512, 1024)


def _numbers(values, kind=float) -> list:
    if isinstance(values, str):
        values = [token for token in values.replace(';', ',').split(',') if token.strip()]
    elif not isinstance(values, (list, tuple)):
        values = [values]
    try:
        return [kind(value) for value in values]
    except ValueError:
        raise ConfigError(f'expected a list of numbers: {values}')


def _write_meta(path: Path, cfg: RunConfig, **extra):
    meta = {'config_hash': cfg.config_hash()}
    meta.update(extra)
    Path(f'{path}.meta.json').write_text(json.dumps(meta, indent=2, sort_keys=True))


def _emit_frame(frame: pd.DataFrame, output: Optional[str], cfg: RunConfig, **extra) -> str:
    text = frame.to_csv(index=False)
    if output is not None:
        Path(output).write_text(text)
        _write_meta(Path(output), cfg, **extra)
    return text


class PulseCli:
    """
    Composite-pulse error suppression reports.
    """

    def sk1(self, theta: float = math.pi, phi: float = 0.0, eps_grid=DEFAULT_EPS_GRID, amplitude: bool = False,
            output: Optional[str] = None, config: Optional[str] = None) -> str:
        init_logging()
        cfg = RunConfig.load(config)
        grid = _numbers(eps_grid)
        if amplitude:
            report = amplitude_report(theta, phi, grid)
        else:
            report = crosstalk_report(theta, phi, grid)
        logger.info(f'log-log slopes: {report.get_slopes()}')
        return _emit_frame(report.get_table(), output, cfg, theta=theta, phi=phi,
                           kind='amplitude' if amplitude else 'crosstalk')


class WiseSimCli:
    """
    WISE architecture simulator: parameter tables, routing schedules, sweeps and budgets.
    """

    def __init__(self):
        self.pulse = PulseCli()

    def params(self, output_format: str = 'pretty', output: Optional[str] = None, config: Optional[str] = None) -> str:
        init_logging()
        cfg = RunConfig.load(config)
        p = derive(cfg.get_base_inputs())
        if output_format == 'json':
            dump = p.to_dict()
            dump['metadata'] = {'config_hash': cfg.config_hash()}
            text = json.dumps(dump, indent=2, sort_keys=True)
            if output is not None:
                Path(output).write_text(text)
            return text
        elif output_format == 'csv':
            return _emit_frame(table_report(p), output, cfg)
        elif output_format == 'pretty':
            return table_report(p).to_string(index=False)
        else:
            raise ConfigError(f'unknown output format: {output_format}')

    def route(self, mode: str = 'realistic', perm: str = 'reversal', output: str = 'schedule.json',
              stream: Optional[str] = None, config: Optional[str] = None) -> str:
        init_logging()
        cfg = RunConfig.load(config)
        t_0 = cfg.get_t0()
        base_layout = cfg.get_layout()
        n_qubits = cfg.get('layout', 'n_qubits')
        if mode == '1d':
            order = parse_permutation(perm, n_qubits, cfg.get_seed())
            schedule = plan_1d(list(range(n_qubits)), order, t_0)
        elif mode == '2d':
            layout = build_layout(n_qubits, 1, base_layout.get_electrodes(), base_layout.get_geometry())
            size = layout.get_zone_count()
            order = parse_permutation(perm, size, cfg.get_seed())
            schedule = plan_2d_regular(layout, QubitConfig.from_sequence(layout, list(range(size))),
                                       QubitConfig.from_sequence(layout, order), t_0)
        elif mode == 'realistic':
            if base_layout.get_k() < 2:
                raise ConfigError(f'realistic routing stores chains and needs layout.k >= 2, got {base_layout.get_k()}')
            size = base_layout.get_zone_count()
            order = parse_permutation(perm, size, cfg.get_seed())
            schedule = plan_2d_realistic(base_layout, chained_config(base_layout, list(range(size))),
                                         chained_config(base_layout, order), t_0)
        else:
            raise ConfigError(f'unknown routing mode: {mode}')

        t_r = schedule.get_duration()
        stats = {
            'mode': mode,
            'perm': perm,
            'layout': str(schedule.get_layout()),
            'steps': len(schedule),
            'bound': schedule.get_bound(),
            't_r_s': t_r,
            'mem_error': cfg.get_memory_model().error_at(t_r),
            'phases': schedule.get_stats().get_counts(),
            'config_hash': cfg.config_hash()
        }
        Path(output).write_text(schedule_to_json(schedule, {'config_hash': cfg.config_hash(), 'mode': mode,
                                                            'perm': perm}))
        stream_path = Path(stream) if stream is not None else Path(output).with_suffix('.bin')
        write_schedule_stream(stream_path, schedule)
        _write_meta(stream_path, cfg, mode=mode, perm=perm)
        return json.dumps(stats, indent=2, sort_keys=True)

    def sweep(self, n_values='100,200,500,1000,2000,5000,10000', k_values='2,4,6,8', output: Optional[str] = None,
              config: Optional[str] = None) -> str:
        init_logging()
        cfg = RunConfig.load(config)
        try:
            frame = sweep_reconfig(_numbers(k_values, int), _numbers(n_values, int), cfg.get_t0(),
                                   cfg.get_memory_model(), cfg.get_workers())
        except ParamsError as error:
            raise ConfigError(str(error))
        return _emit_frame(frame, output, cfg)

    def budget(self, output_format: str = 'pretty', config: Optional[str] = None) -> str:
        init_logging()
        cfg = RunConfig.load(config)
        p = derive(cfg.get_base_inputs())
        switch = switch_budget(cfg.get_layout(), cfg.get_switch_config(), cfg.get_demux_config())
        report = {
            'switch': switch.to_dict(),
            'analog': analog_errors(cfg.get_analog_params(), cfg.get_demux_config(), p.t_r, p.t_2q),
            'speed': system_speed(p),
            'shim_overhead': shim_overhead(cfg.get_layers_per_reconfig(), p.t_sc, p.t_r),
            'io': io_budget(p, cfg.get_aux_lines()),
            'streaming': {
                't_ss_s': p.t_ss,
                'required_rate_bit_s': required_rate(p.n_qubits, p.t_0),
                'hidden_behind_swap': is_streaming_hidden(p.n_sw, p.link_rate, p.t_0)
            },
            'metadata': {'config_hash': cfg.config_hash()}
        }
        if output_format == 'json':
            return json.dumps(report, indent=2, sort_keys=True)
        elif output_format == 'pretty':
            rows = [{'section': section, 'quantity': key, 'value': value}
                    for section, entries in report.items() if isinstance(entries, dict)
                    for key, value in entries.items()]
            rows.append({'section': 'shim', 'quantity': 'overhead', 'value': report['shim_overhead']})
            return pd.DataFrame(rows, columns=['section', 'quantity', 'value']).to_string(index=False)
        else:
            raise ConfigError(f'unknown output format: {output_format}')

    def shim_schedule(self, tradeoff: bool = False, orders=DEFAULT_ORDERS, output: Optional[str] = None,
                      config: Optional[str] = None) -> str:
        init_logging()
        cfg = RunConfig.load(config)
        demux = cfg.get_demux_config()
        layout = cfg.get_layout()
        n_shims = layout.get_zone_count() * layout.get_electrodes().get_n_se_z()
        if tradeoff:
            return _emit_frame(demux_tradeoff(n_shims, _numbers(orders, int), demux.get_t_ec()), output, cfg)
        schedule = demux_schedule(demux, n_shims)
        if output is not None:
            _emit_frame(schedule.get_assignments(), output, cfg)
        return json.dumps(schedule.summary(), indent=2, sort_keys=True)

    def compile(self, circuit: str, output: Optional[str] = None, config: Optional[str] = None,
                split: bool = False) -> str:
        init_logging()
        cfg = RunConfig.load(config)
        circuit_path = Path(circuit)
        if not circuit_path.exists():
            raise ConfigError(f'circuit file does not exist: {circuit_path}')
        layers = parse_circuit(circuit_path.read_text())

        layout = cfg.get_layout()
        qubits = list(range(layout.get_zone_count()))
        if layout.get_k() >= 2 and not split:
            placement = chained_config(layout, qubits)
        else:
            placement = QubitConfig.from_sequence(layout, qubits)
        p = derive(cfg.get_base_inputs())
        mode = cfg.get_gate_mode()

        compiled = []
        for gates in layers:
            layer = compile_layer(gates, placement)
            entry = layer.to_dict()
            entry['duration_s'] = layer_duration(layer, p, mode)
            entry['shim_charge'] = requires_shim_charge(layer, mode)
            if layer.get_kind() == GateKind.SQ_Z:
                if p.t_1q <= 0:
                    raise ConfigError('timing.t1q_us must be positive to drive SQ_Z layers')
                entry['hz_strength_rad_s'] = hz_strength(2 * math.pi / p.t_1q, cfg.get_detuning())
            elif layer.get_kind() == GateKind.SQ_CONTINUOUS:
                frame = plan_continuous(layer, cfg.get_rabi_profile(), p)
                entry['drive'] = json.loads(frame.to_json(orient='records'))
            compiled.append(entry)
        logger.info(f'compiled {len(compiled)} layers on {layout} ({placement.get_chain_mode().name})')

        report = {
            'layers': compiled,
            'total_duration_s': sum(entry['duration_s'] for entry in compiled),
            'metadata': {'config_hash': cfg.config_hash(), 'gate_mode': mode.name.lower(),
                         'chain_mode': placement.get_chain_mode().name}
        }
        text = json.dumps(report, indent=2, sort_keys=True)
        if output is not None:
            Path(output).write_text(text)
            _write_meta(Path(output), cfg, circuit=str(circuit_path), gate_mode=mode.name.lower())
        return text


def main(argv=None):
    try:
        fire.Fire(WiseSimCli, command=argv)
    except (RoutingError, ScheduleVerificationError, RoutingRequiredError) as error:
        print(f'wisesim: routing failed: {error}', file=sys.stderr)
        sys.exit(3)
    except (ConfigError, ParamsError, LayoutError, ConfigMismatchError, DemuxCapacityError,
            GateCompileError) as error:
        print(f'wisesim: config error: {error}', file=sys.stderr)
        sys.exit(2)


if __name__ == '__main__':
    main()
