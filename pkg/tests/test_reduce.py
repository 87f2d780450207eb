import numpy as np
import pytest

from gainrank.algebra.quat import I, J, K
from gainrank.exceptions import DisconnectedGraphException, WrongFamilyException
from gainrank.graphs import generators
from gainrank.graphs.gain_graph import GainGraph
from gainrank.graphs.qgg_format import read_qgg
from gainrank.graphs.reduce import (bicyclic_core, find_multiple_vertices, recognize, reduced_graph,
                                    remove_pendant_twins, trim_pendant_pairs, two_core)
from gainrank.utils.consts import Family


def test_trim_pendant_pairs():
    trim = trim_pendant_pairs(generators.path_graph(5))
    assert trim.pairs == 2
    assert trim.graph.n == 1
    assert trim.removed == [(0, 1), (2, 3)]


def test_trim_keeps_rank_identity(rng):
    for _ in range(20):
        graph = generators.random_graph(int(rng.integers(2, 9)), rng, 0.35)
        trim = trim_pendant_pairs(graph)
        assert graph.rank().rank == trim.graph.rank().rank + 2 * trim.pairs


def test_remove_pendant_twins():
    star = generators.star_graph(5)
    stripped = remove_pendant_twins(star)
    assert stripped.n == 2
    assert stripped.labels == (0, 1)
    assert stripped.rank().rank == star.rank().rank == 2


def test_multiple_vertices(reducible_triangle):
    pairs = find_multiple_vertices(reducible_triangle)
    assert [(p.x, p.y) for p in pairs] == [(0, 2)]
    assert pairs[0].k == -K


def test_non_proportional_twins_are_not_multiple():
    # same neighbourhood, gains i,j against i,-j are not left proportional
    graph = GainGraph.from_edges(4, [(0, 1, I), (0, 3, J), (2, 1, I), (2, 3, -J)])
    assert find_multiple_vertices(graph) == []


def test_reduced_graph(reducible_triangle):
    reduced = reduced_graph(reducible_triangle)
    assert reduced.labels == (0, 1, 3)
    assert reduced.rank().rank == reducible_triangle.rank().rank == 2
    assert reduced_graph(reducible_triangle, np.random.default_rng(0)).n == 3


def test_reduced_graph_of_complete_bipartite_type1(k32):
    reduced = reduced_graph(k32)
    assert reduced.n == 2 and reduced.edge_count == 1
    assert reduced.rank().rank == 2


def test_two_core():
    graph = generators.canonical_unicyclic_graph(4, {0: 1, 2: 2})
    assert two_core(graph) == [0, 1, 2, 3]
    assert two_core(generators.path_graph(4)) == []


@pytest.mark.parametrize('graph, family, params', [
    (generators.path_graph(4), Family.PATH, (4,)),
    (generators.star_graph(5), Family.COMPLETE_BIPARTITE, (1, 4)),
    (generators.cycle_graph(6), Family.CYCLE, (6,)),
    (generators.complete_graph(5), Family.COMPLETE, (5,)),
    (generators.complete_bipartite_graph(2, 4), Family.COMPLETE_BIPARTITE, (2, 4)),
    (generators.complete_bipartite_graph(2, 3), Family.THETA, (1, 1, 1)),
    (generators.complete_tripartite_graph(1, 2, 2), Family.COMPLETE_TRIPARTITE, (1, 2, 2)),
    (generators.canonical_unicyclic_graph(5, {0: 1, 2: 1}), Family.CANONICAL_UNICYCLIC, (5, 2, 1)),
    (generators.infinity_graph(3, 2, 4), Family.INFINITY, (3, 2, 4)),
    (generators.infinity_graph(4, 1, 3), Family.INFINITY, (3, 1, 4)),
    (generators.theta_graph(1, 3, 2), Family.THETA, (1, 2, 3)),
])
def test_recognize(graph, family, params):
    report = recognize(graph)
    assert report.family == family
    assert report.params == params
    assert report.shape.validate(graph)


def test_recognize_alternatives():
    # C4 is also K_{2,2}, K3 is also K_{1,1,1}
    report = recognize(generators.cycle_graph(4))
    assert report.family == Family.COMPLETE_BIPARTITE
    assert report.find(Family.CYCLE).params == (4,)
    triangle = recognize(generators.cycle_graph(3))
    assert triangle.family == Family.COMPLETE_TRIPARTITE
    assert triangle.find(Family.COMPLETE).params == (3,)
    assert recognize(generators.star_graph(5)).find(Family.STAR) is not None
    assert recognize(generators.theta_graph(0, 1, 1)).family == Family.THETA


def test_recognize_k32_as_theta_and_complete_bipartite(sample_graph):
    # K_{3,2} is theta(1,1,1); the theta shape is primary
    report = recognize(read_qgg(sample_graph('k32.qgg')))
    assert (report.family, report.params) == (Family.THETA, (1, 1, 1))
    bipartite = report.find(Family.COMPLETE_BIPARTITE)
    assert bipartite.params == (3, 2)
    assert bipartite.witness['parts'] == [[0, 1, 2], [3, 4]]


def test_recognize_other_and_disconnected():
    graph = GainGraph.from_underlying(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 3)])
    assert recognize(graph).family == Family.OTHER
    with pytest.raises(DisconnectedGraphException):
        recognize(GainGraph(2))


def test_canonical_segments():
    # stars on cycle vertices 0 and 3 of C6: two segments of two vertices each
    shape = recognize(generators.canonical_unicyclic_graph(6, {0: 1, 3: 1})).find(Family.CANONICAL_UNICYCLIC)
    assert shape.params == (6, 2, 2)
    assert shape.witness['segments'] == [[1, 2], [4, 5]]


def test_bicyclic_core():
    base = generators.theta_graph(0, 1, 1)
    graph = GainGraph.from_underlying(6, base.edge_pairs() + [(2, 4), (4, 5)])
    core = bicyclic_core(graph)
    assert core.has_pendants
    assert core.vertices == [0, 1, 2, 3]
    assert core.shape.family == Family.THETA
    with pytest.raises(WrongFamilyException):
        bicyclic_core(generators.cycle_graph(5))
