import os
import sys

import pytest
from hypothesis import strategies as st

SRC_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'src')
if SRC_DIR not in sys.path:
    sys.path.insert(0, SRC_DIR)

from indexcoding.graph_core import DiGraph  # noqa: E402
from indexcoding.groupcast import GroupcastInstance  # noqa: E402
from utils.config import Limits  # noqa: E402


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 5):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return DiGraph(n, frozenset(chosen))


@st.composite
def bidirectional_digraphs(draw, min_n: int = 2, max_n: int = 5):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True))
    return DiGraph(n, frozenset(chosen + [(v, u) for u, v in chosen]))


@st.composite
def groupcast_instances(draw, max_m: int = 5, max_receivers: int = 8):
    m = draw(st.integers(min_value=1, max_value=max_m))
    receivers = []
    for _ in range(draw(st.integers(min_value=1, max_value=max_receivers))):
        d = draw(st.integers(min_value=1, max_value=m))
        others = [a for a in range(1, m + 1) if a != d]
        side = draw(st.lists(st.sampled_from(others), unique=True)) if others else []
        receivers.append((d, side))
    return GroupcastInstance.create(m, receivers)


@pytest.fixture
def limits() -> Limits:
    return Limits()


@pytest.fixture
def tight_limits() -> Limits:
    return Limits(mais_max_n=4, isomorphism_max_n=4, clique_max_n=4, cycle_cover_max_n=4,
                  minrank_max_n=4, max_tuples=16)
