import importlib
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qszilard import Controls  # noqa: E402

_BACKENDS = ["qszilard._pykernels"]
try:
    importlib.import_module("qszilard._ckernels")
    _BACKENDS.append("qszilard._ckernels")
except ImportError:
    pass


@pytest.fixture(params=_BACKENDS, ids=lambda m: m.rsplit(".", 1)[-1])
def backend(request):
    """Each available kernel implementation in turn."""
    return importlib.import_module(request.param)


@pytest.fixture(scope="session")
def tight():
    return Controls(series_tol=1e-12)
