import logging
import os
from pathlib import Path

import toml

LOG_FORMAT = '%(asctime)s [%(threadName)s] - %(name)s - %(levelname)s - %(message)s'

defaults = dict()


def init_logging():
    """
    Routes log records to stderr; every CLI command calls this, so a second call is a no-op.
    """
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    if any(getattr(handler, 'wisesim_console', False) for handler in root.handlers):
        return
    console = logging.StreamHandler()
    console.wisesim_console = True
    console.setLevel(logging.DEBUG if os.getenv('DEBUG') else logging.INFO)
    console.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(console)


def init_defaults():
    global defaults
    defaults = toml.load(Path(__file__).parent.joinpath('defaults.cfg'))


def get_global_defaults() -> dict:
    if len(defaults) == 0:
        init_defaults()
    return defaults


class Environment:
    """
    Lookup of override values in the process environment, e.g. WISESIM_TIMING_T0_US.
    """

    def __init__(self, prefix: str = 'WISESIM_', source: dict = None):
        self.prefix = prefix
        self.values = dict(source) if source is not None else dict(os.environ)

    def getenv(self, key: str, default_val: str = None) -> str:
        full_key = f'{self.prefix}{key.upper()}'
        value = self.values.get(full_key)
        if value is None or value == '':
            return default_val
        else:
            return value

    def keys(self) -> list:
        return sorted(key[len(self.prefix):] for key in self.values if key.startswith(self.prefix))
