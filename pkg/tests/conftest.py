import logging
import random

import pytest

from lib.mediatrix.config import DiffCoverConfig, MediatrixConfig
from lib.mediatrix.digraph import Digraph
from lib.mediatrix.galois import projective_plane
from lib.mediatrix.utils import logger


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def config():
    return MediatrixConfig(diffcover=DiffCoverConfig(node_limit=2_000_000))


@pytest.fixture
def three_cycle():
    return Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def fano():
    return projective_plane(2)


@pytest.fixture(autouse=True)
def reset_logger():
    # main() binds a handler to the stderr of the test that called it
    yield
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True
