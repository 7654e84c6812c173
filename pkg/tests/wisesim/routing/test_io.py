import json

import numpy as np

from wisesim.routing.executor import execute
from wisesim.routing.io import schedule_to_json, schedule_from_json, write_schedule_stream
from wisesim.routing.planner import plan_2d_realistic
from wisesim.topology.api import TrapLayout
from wisesim.topology.chains import chained_config
from wisesim.wiring.stream import read_select_stream, HEADER
from wisesim.wiring.switch import encode_select


def _schedule():
    layout = TrapLayout(6, 4, 3)
    order = [int(q) for q in np.random.default_rng(11).permutation(24)]
    return plan_2d_realistic(layout, chained_config(layout, list(range(24))), chained_config(layout, order))


def test_json_round_trip():
    schedule = _schedule()
    text = schedule_to_json(schedule, {'perm': 'random:11'})
    restored = schedule_from_json(text)
    assert schedule.get_steps() == restored.get_steps()
    assert schedule.get_layout() == restored.get_layout()
    assert schedule.get_stats().get_counts() == restored.get_stats().get_counts()
    assert restored.get_target() == execute(restored)

    values = json.loads(text)
    assert 'random:11' == values['metadata']['perm']
    assert len(schedule) == values['step_count']
    assert 'SPLIT' == values['steps'][0]['phase']


def test_json_is_deterministic():
    assert schedule_to_json(_schedule()) == schedule_to_json(_schedule())


def test_schedule_stream(tmp_path):
    schedule = _schedule()
    stream_path = tmp_path.joinpath('schedule.bin')
    assert len(schedule) == write_schedule_stream(stream_path, schedule)
    assert HEADER.size + len(schedule) * 3 == stream_path.stat().st_size
    length, words = read_select_stream(stream_path)
    assert 24 == length
    assert [encode_select(step) for step in schedule.get_steps()] == words

    second_path = tmp_path.joinpath('again.bin')
    write_schedule_stream(second_path, _schedule())
    assert stream_path.read_bytes() == second_path.read_bytes()
