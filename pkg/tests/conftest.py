import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from sumnet import catalog  # noqa: E402
from sumnet.multigraph import Edge, SumNetwork  # noqa: E402
from sumnet.oracle import GeneratorConfig, generate_random  # noqa: E402

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def small_dags(draw, max_nodes=7, max_edges=10, n_sources=None, n_terminals=None):
    """Any small DAG (edges go from lower to higher id) with disjoint sources/terminals."""
    n = draw(st.integers(2, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=max_edges))
    ns = n_sources or draw(st.integers(1, max(1, n // 2)))
    nt = n_terminals or draw(st.integers(1, max(1, n - ns)))
    nodes = list(range(n))
    perm = draw(st.permutations(nodes))
    sources = perm[:ns]
    terminals = perm[ns:ns + nt]
    return SumNetwork(nodes, [Edge(i, u, v) for i, (u, v) in enumerate(chosen)], sources, terminals)


def gen(seed, family="bridged", nodes=10, edges=16, max_slots=10, **kw):
    if family == "layered":
        nodes, edges = min(nodes, 9), min(edges, 12)
    return generate_random(GeneratorConfig(node_budget=nodes, edge_budget=edges, seed=seed,
                                           family=family, max_slots=max_slots, **kw))


@st.composite
def random_3s3t(draw, family=None, max_slots=10):
    fam = family or draw(st.sampled_from(["bridged", "layered"]))
    return gen(draw(st.integers(0, 10_000)), fam, max_slots=max_slots)


@pytest.fixture
def bottleneck():
    return catalog.bottleneck()


@pytest.fixture
def nine():
    return catalog.nine_direct()


@pytest.fixture
def thm1_net():
    return catalog.nonsolvable_witness()


@pytest.fixture
def thm2_net():
    return catalog.except_f2_witness()
