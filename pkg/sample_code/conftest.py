"""
Shared fixtures for the test modules.
"""

import os
import sys

import numpy as np
import pytest

# Flat modules live at the repository root
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from group_core import build_group  # noqa: E402

SEED = 0x5EED


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def trivial_group():
    return build_group("cyclic:1")


@pytest.fixture(scope="session")
def c2():
    return build_group("cyclic:2")


@pytest.fixture(scope="session")
def c4():
    return build_group("cyclic:4")


@pytest.fixture(scope="session")
def s3():
    return build_group("sym:3")


@pytest.fixture(scope="session")
def q8():
    return build_group("q8")


@pytest.fixture(scope="session")
def d4():
    return build_group("dihedral:4")
