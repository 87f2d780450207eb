import numpy as np
import pytest

from gainrank.exceptions import ParityMismatchException, WrongFamilyException
from gainrank.graphs import generators
from gainrank.graphs.gain_graph import GainGraph
from gainrank.theorems import formulas
from gainrank.theorems.formulas import RankInterval
from gainrank.utils.consts import CycleType

T1, T2, T3, T4 = CycleType.TYPE1, CycleType.TYPE2, CycleType.TYPE3, CycleType.TYPE4


@pytest.mark.parametrize('n', range(1, 13))
def test_path_rank(n):
    expected = n - 1 if n % 2 else n
    assert formulas.path_rank(n) == expected
    graph = generators.path_graph(n, np.random.default_rng(n))
    assert graph.rank().rank == expected


def test_path_rank_needs_a_vertex():
    with pytest.raises(ValueError):
        formulas.path_rank(0)


@pytest.mark.parametrize('n, cycle_type, expected', [
    (4, T1, 2), (4, T2, 4), (6, T1, 4), (6, T2, 6), (3, T3, 3), (3, T4, 2), (5, T3, 5), (5, T4, 4), (7, T4, 6),
])
def test_cycle_rank(n, cycle_type, expected):
    assert formulas.cycle_rank(n, cycle_type) == expected
    graph = generators.cycle_graph(n, cycle_type)
    switched = graph.switch(generators.random_switching(n, np.random.default_rng(n)))
    assert switched.rank().rank == expected


def test_cycle_rank_parity():
    with pytest.raises(ParityMismatchException):
        formulas.cycle_rank(5, T1)
    with pytest.raises(ParityMismatchException):
        formulas.cycle_rank(4, T4)
    with pytest.raises(ValueError):
        formulas.cycle_rank(2, T1)


def test_cycle_attachment_rank():
    assert formulas.cycle_attachment_rank(4, T1, 2, 2) == 4
    assert formulas.cycle_attachment_rank(4, T2, 2, 0) == 4
    assert formulas.cycle_attachment_rank(5, T4, 2, 2) == 6
    interval = formulas.cycle_attachment_rank(3, T3, 3, 2)
    assert interval == RankInterval(4, 6)
    assert interval.contains(5) and not interval.contains(3)


@pytest.mark.parametrize('length', range(3, 8))
def test_cycle_attachment_matches_computed_rank(length):
    rng = np.random.default_rng(length)
    base = generators.random_connected_graph(4, rng)
    for cycle_type in CycleType:
        if cycle_type.even != (length % 2 == 0):
            continue
        glued = generators.attach_cycle(base, 2, length, cycle_type)
        predicted = formulas.cycle_attachment_rank(length, cycle_type, base.rank().rank,
                                                   base.delete_vertices([2]).rank().rank)
        actual = glued.rank().rank
        if isinstance(predicted, RankInterval):
            assert predicted.contains(actual)
        else:
            assert predicted == actual


@pytest.mark.parametrize('g, leaves, expected', [
    (3, {0: 1}, 4),
    (4, {0: 1}, 4),
    (5, {0: 1, 2: 1}, 6),
    (6, {0: 1, 3: 2}, 8),
    (6, {0: 1, 1: 1, 2: 1, 3: 1, 4: 1, 5: 1}, 12),
])
def test_canonical_unicyclic_rank(g, leaves, expected):
    graph = generators.canonical_unicyclic_graph(g, leaves)
    assert formulas.canonical_unicyclic_rank(graph) == expected
    assert graph.rank().rank == expected


def test_canonical_unicyclic_rank_wrong_family():
    with pytest.raises(WrongFamilyException):
        formulas.canonical_unicyclic_rank(generators.cycle_graph(5))


def test_bicyclic_lower_bound():
    theta = generators.theta_graph(0, 1, 1)
    with_leaf = GainGraph.from_underlying(5, theta.edge_pairs() + [(2, 4)])
    assert formulas.bicyclic_lower_bound(with_leaf) == 4
    assert with_leaf.rank().rank >= 4

    bowtie = generators.infinity_graph(3, 1, 3)
    with_leaf = GainGraph.from_underlying(6, bowtie.edge_pairs() + [(1, 5)])
    assert formulas.bicyclic_lower_bound(with_leaf) == 6
    assert with_leaf.rank().rank >= 6

    with pytest.raises(WrongFamilyException):
        formulas.bicyclic_lower_bound(theta)
