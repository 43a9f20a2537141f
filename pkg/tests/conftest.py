import numpy as np
import pytest

from laddertrees.graphs import ENHANCED, FAMILY_KINDS, HELIX3, LADDER, ZIGZAG

GOLDEN = (np.sqrt(5.0) + 1.0) / 2.0


@pytest.fixture(params=FAMILY_KINDS)
def kind(request):
    """One graph-family kind per run."""
    return request.param


@pytest.fixture(params=[LADDER, ZIGZAG])
def width2_kind(request):
    return request.param


@pytest.fixture(params=[HELIX3, ENHANCED])
def helix_kind(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)
