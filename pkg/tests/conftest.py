import os

import pytest

from etaq.eta import parse_eta
from etaq.partitions import ParityOracle


def pytest_collection_modifyitems(config, items):
    if os.environ.get("ETAQ_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow tier; set ETAQ_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def B():
    return parse_eta("3456:24^6*48^-1*72^-1")


@pytest.fixture(scope="session")
def F():
    return parse_eta("100:2^2*10^2 + 100:2*10^2*50")


@pytest.fixture(scope="session")
def H():
    return parse_eta("3456:72^4*24*48^-1")


@pytest.fixture(scope="session")
def oracle():
    return ParityOracle(max_n=10**6)
