import os

import pytest

# one BLAS thread: least-squares paths must repeat bit for bit within a session
for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
    os.environ.setdefault(_var, "1")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the long-running tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running exact or numerical checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
