import os, sys, inspect
currentdir = os.path.dirname(os.path.abspath(inspect.getfile(inspect.currentframe())))
parentdir = os.path.dirname(currentdir)
sys.path.insert(0, os.path.join(parentdir, "src"))

import pytest

from quower.config import SolverConfig
from quower.log_cfg import LogConfig


@pytest.fixture(autouse=True)
def default_solver_config():
    """Every test starts from the default solver settings and silent logging."""
    SolverConfig._last_instance = None
    yield
    SolverConfig._last_instance = None
    if LogConfig._last_instance is not None:
        LogConfig._last_instance._detach()
        LogConfig._last_instance = None
