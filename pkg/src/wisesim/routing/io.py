import json
from pathlib import Path
from typing import Optional

from wisesim.routing.api import SwapSchedule, SwapStep, SwapPhase, RoutingStats
from wisesim.topology.api import TrapLayout, QubitConfig
from wisesim.wiring.api import SelectWord
from wisesim.wiring.stream import write_select_stream
from wisesim.wiring.switch import encode_select


def schedule_to_dict(schedule: SwapSchedule, metadata: Optional[dict] = None) -> dict:
    layout = schedule.get_layout()
    return {
        'metadata': dict(metadata or {}),
        'layout': layout.to_dict(),
        'source': schedule.get_source().to_dict(),
        'target': schedule.get_target().to_dict(),
        'bound': schedule.get_bound(),
        'step_count': len(schedule),
        'duration_s': schedule.get_duration(),
        'stats': schedule.get_stats().get_counts(),
        'steps': [{
            'phase': step.get_phase().name,
            'mask': encode_select(step).to_hex(),
            'duration': step.get_duration()
        } for step in schedule.get_steps()]
    }


def schedule_from_dict(values: dict) -> SwapSchedule:
    layout = TrapLayout.from_dict(values['layout'])
    length = layout.get_zone_count()
    steps = [SwapStep(SwapPhase[step['phase']], SelectWord.from_hex(step['mask'], length).get_bits(), step['duration'])
             for step in values['steps']]
    stats = RoutingStats()
    for name, count in values.get('stats', {}).items():
        stats.add(name, count)
    return SwapSchedule(layout, steps, QubitConfig.from_dict(layout, values['source']),
                        QubitConfig.from_dict(layout, values['target']), values.get('bound'), stats)


def schedule_to_json(schedule: SwapSchedule, metadata: Optional[dict] = None) -> str:
    return json.dumps(schedule_to_dict(schedule, metadata), indent=2)


def schedule_from_json(text: str) -> SwapSchedule:
    return schedule_from_dict(json.loads(text))


def write_schedule_stream(path: Path, schedule: SwapSchedule) -> int:
    return write_select_stream(path, [encode_select(step) for step in schedule.get_steps()],
                               schedule.get_layout().get_zone_count())
