import pytest
from hypothesis import HealthCheck, settings

from gradedcp.fixtures import five_vertex_graph, single_edge_graph, single_loop_graph
from gradedcp.graph import DirectedGraph, rose
from gradedcp.lpa import GradedSlice, standard_system

settings.register_profile("default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def g_edge():
    return single_edge_graph()


@pytest.fixture(scope="session")
def g_five():
    return five_vertex_graph()


@pytest.fixture(scope="session")
def g_loop():
    return single_loop_graph()


@pytest.fixture(scope="session")
def g_rose2():
    return rose(2)


@pytest.fixture(scope="session")
def g_point():
    return DirectedGraph.from_edges(["v"], [])


@pytest.fixture(scope="session")
def five_slice(g_five):
    return GradedSlice(g_five)


@pytest.fixture(scope="session")
def edge_slice(g_edge):
    return GradedSlice(g_edge)


@pytest.fixture(scope="session")
def five_system(g_five, five_slice):
    return standard_system(g_five, five_slice.alg)


@pytest.fixture(scope="session")
def edge_system(g_edge, edge_slice):
    return standard_system(g_edge, edge_slice.alg)
