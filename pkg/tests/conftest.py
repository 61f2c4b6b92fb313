import pytest

from heckedim.config import get_cfg_defaults
from heckedim.dihedral import Params


@pytest.fixture
def cfg():
    cfg = get_cfg_defaults()
    cfg.RUNTIME.PROGRESS = False
    return cfg


@pytest.fixture
def p_half_third():
    return Params.parse('1/2', '1/3')
