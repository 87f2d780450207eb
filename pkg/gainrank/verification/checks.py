"""
per-graph checks. every check raises FalsificationException when a rank statement
disagrees with the computed rank and returns normally otherwise
"""
import logging
from typing import Iterable, List, Optional, Sequence

import numpy as np

from gainrank.algebra.quat import ONE
from gainrank.algebra.qlinalg import QMatrix, left_row_rank_eliminate, rank_via_adjoint
from gainrank.exceptions import FalsificationException
from gainrank.graphs.gain_graph import GainGraph, SwitchingFunction
from gainrank.graphs.reduce import trim_pendant_pairs, remove_pendant_twins, reduced_graph
from gainrank.theorems import classifiers, formulas, tables
from gainrank.theorems.classifiers import GraphFacts
from gainrank.theorems.templates import GainSample, Template
from gainrank.utils.consts import CycleType, Family, RankMethod, DEFAULT_TOLERANCE

logger = logging.getLogger(__name__)


def _rank(graph: GainGraph, tol: float = DEFAULT_TOLERANCE) -> int:
    return graph.rank(RankMethod.ELIMINATION, tol).rank


def _expect(check: str, condition: bool, detail: str, graph: Optional[GainGraph] = None):
    if not condition:
        raise FalsificationException(check, detail, graph)


# algebra

def check_rank_oracles(matrix: QMatrix, tol: float = DEFAULT_TOLERANCE):
    elimination = left_row_rank_eliminate(matrix, tol).rank
    adjoint = rank_via_adjoint(matrix, tol).rank
    _expect('rank-oracles', elimination == adjoint,
            f'elimination rank {elimination} != adjoint rank {adjoint} on {matrix!r}')


# closed forms

def check_path_rank(graph: GainGraph, tol: float = DEFAULT_TOLERANCE):
    expected, actual = formulas.path_rank(graph.n), _rank(graph, tol)
    _expect('path-rank', expected == actual, f'P{graph.n}: formula {expected}, computed {actual}', graph)


def check_cycle_rank(graph: GainGraph, cycle_type: CycleType, tol: float = DEFAULT_TOLERANCE):
    expected, actual = formulas.cycle_rank(graph.n, cycle_type), _rank(graph, tol)
    _expect('cycle-rank', expected == actual,
            f'C{graph.n} {cycle_type.name}: formula {expected}, computed {actual}', graph)


def check_cycle_attachment(graph: GainGraph, g1: GainGraph, u: int, cycle_length: int, cycle_type: CycleType,
                           tol: float = DEFAULT_TOLERANCE):
    """
    :param graph: the cycle glued onto g1 at vertex u
    """
    predicted = formulas.cycle_attachment_rank(cycle_length, cycle_type, _rank(g1, tol),
                                               _rank(g1.delete_vertices([u]), tol))
    actual = _rank(graph, tol)
    if isinstance(predicted, formulas.RankInterval):
        _expect('cycle-attachment', predicted.contains(actual),
                f'C{cycle_length} {cycle_type.name} attachment: rank {actual} outside {predicted}', graph)
    else:
        _expect('cycle-attachment', predicted == actual,
                f'C{cycle_length} {cycle_type.name} attachment: formula {predicted}, computed {actual}', graph)


def check_canonical_unicyclic(graph: GainGraph, tol: float = DEFAULT_TOLERANCE):
    facts = GraphFacts(graph, tol=tol)
    shape = facts.shape.find(Family.CANONICAL_UNICYCLIC)
    _expect('canonical-unicyclic', shape is not None, 'construction is not recognized as canonical unicyclic', graph)
    g, _, k = shape.params
    _expect('canonical-unicyclic', (g - k) % 2 == 0, f'g = {g} and k = {k} differ in parity', graph)
    predicted = formulas.canonical_unicyclic_rank(graph)
    _expect('canonical-unicyclic', predicted == facts.rank, f'formula {predicted}, computed {facts.rank}', graph)


# tables and special shapes

def check_template_sample(template: Template, sample: GainSample, tol: float = DEFAULT_TOLERANCE):
    check = f'template:{template.name}'
    graph = template.build(sample.gains)
    mapping = template.match(graph)
    _expect(check, mapping is not None, f'{sample.label} build does not match its own template', graph)
    predicted = template.predict(graph, mapping)
    _expect(check, predicted == sample.expected,
            f'{sample.label}: rule predicts {predicted}, sample expects {sample.expected}', graph)
    rank = _rank(graph, tol)
    _expect(check, predicted.holds_for(rank), f'{sample.label}: predicted {predicted}, computed {rank}', graph)


def check_template_switching(template: Template, sample: GainSample, xi: SwitchingFunction):
    """
    the table prediction is a property of the switching class
    """
    graph = template.build(sample.gains)
    switched = graph.switch(xi)
    before = template.predict(graph, template.match(graph))
    after = template.predict(switched, template.match(switched))
    _expect(f'template:{template.name}', before == after,
            f'{sample.label}: prediction {before} becomes {after} after switching', switched)


def check_special_shape(name: str, graph: GainGraph, expected_rank: int, tol: float = DEFAULT_TOLERANCE):
    facts = GraphFacts(graph, tol=tol)
    _expect(name, facts.all_cycles_type1, 'not every cycle has Type1', graph)
    _expect(name, facts.rank == expected_rank, f'rank {facts.rank}, expected {expected_rank}', graph)
    _expect(name, facts.girth is not None and facts.girth.length == expected_rank,
            f'girth {facts.girth.length if facts.girth else None}, expected {expected_rank}', graph)
    case = classifiers.classify_rank_eq_girth_family(facts)
    _expect(name, case is not None, 'no rank = girth case matches', graph)


def check_k4(graph: GainGraph, tol: float = DEFAULT_TOLERANCE):
    facts = GraphFacts(graph, tol=tol)
    _expect('k4-rank', classifiers.k4_rank_check(facts), f'K4 with rank {facts.rank}', graph)


# exhaustive corpus

def check_girth_bound(graph: classifiers.GraphLike):
    classifiers.verify_girth_bound(graph)


def check_dominating_cycle(facts: GraphFacts):
    cycle = facts.girth.cycle
    cycle_rank = _rank(facts.graph.induced_subgraph(cycle), facts.tol)
    if cycle_rank == facts.rank:
        _expect('dominating-cycle', facts.graph.is_dominating_set(cycle),
                f'shortest cycle {list(cycle)} has the graph rank {cycle_rank} but does not dominate', facts.graph)


def check_cycle_neighbours(facts: GraphFacts):
    cycle = set(facts.girth.cycle)
    crowded = [v for v in facts.graph.vertices if v not in cycle and len(facts.graph.neighbors(v) & cycle) >= 2]
    if crowded:
        _expect('cycle-neighbours', facts.girth.length in (3, 4),
                f'vertex {crowded[0]} has two neighbours on a shortest cycle of length {facts.girth.length}',
                facts.graph)


def check_rank2(facts: GraphFacts):
    classifiers.classify_rank2(facts)


def check_rank_girth(facts: GraphFacts) -> bool:
    """
    :return: False when a girth-4, rank-4 graph matches none of the sufficient cases
    """
    case = classifiers.classify_rank_eq_girth_family(facts)
    return not (facts.girth.length == 4 and facts.rank == 4 and case is None)


def check_canonical_member(facts: GraphFacts):
    if facts.shape.find(Family.CANONICAL_UNICYCLIC) is not None:
        predicted = formulas.canonical_unicyclic_rank(facts.graph)
        _expect('canonical-unicyclic', predicted == facts.rank,
                f'formula {predicted}, computed {facts.rank}', facts.graph)


def check_bicyclic_tables(facts: GraphFacts) -> Optional[tables.TableMatch]:
    """
    table predictions and lower bounds for a connected bicyclic graph.
    :return: the pendant-table result when no template matched and the rank is 4, else None
    """
    graph = facts.graph
    if not graph.pendant_vertices():
        match = tables.predict_pendant_free_rank(graph)
        _expect('pendant-free-table', match.prediction.holds_for(facts.rank),
                f'{match.case} predicted, computed {facts.rank}', graph)
        return None

    bound = formulas.bicyclic_lower_bound(graph)
    _expect('bicyclic-lower-bound', facts.rank >= bound, f'rank {facts.rank} below bound {bound}', graph)
    if tables.has_pendant_twins(graph):
        return None
    match = tables.predict_pendant_rank4(graph)
    if match.template is None:
        return match if facts.rank == 4 else None
    _expect('pendant-table', match.prediction.holds_for(facts.rank),
            f'{match.case} predicted, computed {facts.rank}', graph)
    return None


# reductions

def check_trim_identity(graph: GainGraph, tol: float = DEFAULT_TOLERANCE):
    trim = trim_pendant_pairs(graph)
    before, after = _rank(graph, tol), _rank(trim.graph, tol)
    _expect('pendant-trim', before == after + 2 * trim.pairs,
            f'rank {before} != {after} + 2 * {trim.pairs} pendant pairs', graph)


def check_twin_invariance(graph: GainGraph, tol: float = DEFAULT_TOLERANCE):
    stripped = remove_pendant_twins(graph)
    before, after = _rank(graph, tol), _rank(stripped, tol)
    _expect('pendant-twins', before == after, f'twin removal changed rank {before} -> {after}', graph)


def check_reduced_invariance(graph: GainGraph, rng: Optional[np.random.Generator] = None,
                             tol: float = DEFAULT_TOLERANCE):
    reduced = reduced_graph(graph, rng)
    before, after = _rank(graph, tol), _rank(reduced, tol)
    _expect('reduced-graph', before == after, f'reduction changed rank {before} -> {after}', graph)


def check_reduction_confluence(graph: GainGraph, rng: np.random.Generator, tol: float = DEFAULT_TOLERANCE):
    """
    reduced graphs reached in different deletion orders have the same size and rank
    """
    first, other = reduced_graph(graph), reduced_graph(graph, rng)
    _expect('reduction-confluence', first.n == other.n and _rank(first, tol) == _rank(other, tol),
            f'deterministic reduction keeps {first.n} vertices, random order keeps {other.n}', graph)


def check_switching_invariance(graph: GainGraph, xi: SwitchingFunction, cycles: Iterable[Sequence[int]] = (),
                               tol: float = DEFAULT_TOLERANCE):
    switched = graph.switch(xi)
    before, after = _rank(graph, tol), _rank(switched, tol)
    _expect('switching', before == after, f'switching changed rank {before} -> {after}', graph)
    for cycle in cycles:
        _expect('switching', graph.classify_cycle(cycle, strict=True) == switched.classify_cycle(cycle, strict=True),
                f'switching changed the type of cycle {cycle}', graph)


def check_vertex_deletion(graph: GainGraph, v: int, tol: float = DEFAULT_TOLERANCE):
    before, after = _rank(graph, tol), _rank(graph.delete_vertices([v]), tol)
    _expect('vertex-deletion', before - 2 <= after <= before,
            f'deleting vertex {v} takes rank {before} to {after}', graph)


def check_induced_subgraph(graph: GainGraph, subset: Iterable[int], tol: float = DEFAULT_TOLERANCE):
    subset = sorted(set(subset))
    whole, part = _rank(graph, tol), _rank(graph.induced_subgraph(subset), tol)
    _expect('induced-subgraph', part <= whole, f'induced subgraph on {subset} has rank {part} > {whole}', graph)
    if part == whole and graph.is_connected():
        _expect('dominating-subgraph', graph.is_dominating_set(subset),
                f'induced subgraph on {subset} keeps rank {whole} but does not dominate', graph)


def check_component_additivity(graph: GainGraph, tol: float = DEFAULT_TOLERANCE):
    components: List[List[int]] = graph.connected_components()
    parts = sum(_rank(graph.induced_subgraph(c), tol) for c in components)
    whole = _rank(graph, tol)
    _expect('component-additivity', parts == whole,
            f'{len(components)} components sum to rank {parts}, graph has {whole}', graph)


# worked examples

def check_k32_example(graph: GainGraph):
    facts = GraphFacts(graph)
    _expect('k32-example', facts.girth.length == 4 and facts.rank == 2,
            f'girth {facts.girth.length}, rank {facts.rank}; expected 4 and 2', graph)
    squares = [c for c in graph.all_cycles() if len(c) == 4]
    _expect('k32-example', len(squares) == 3 and all(graph.cycle_gain(c).is_close(ONE) for c in squares),
            'expected three 4-cycles with gain 1', graph)
    report = classifiers.verify_girth_bound(facts)
    _expect('k32-example', report.matched_cases == ['girth-bound:complete-bipartite-type1'],
            f'matched {report.matched_cases}', graph)


def check_reducible_triangle_example(graph: GainGraph):
    facts = GraphFacts(graph)
    reduced = facts.reduced
    _expect('reducible-triangle-example', reduced.n == 3 and reduced.edge_count == 3,
            f'reduced graph has {reduced.n} vertices and {reduced.edge_count} edges', graph)
    _expect('reducible-triangle-example', facts.cycle_type([0, 1, 2], reduced) == CycleType.TYPE4,
            'reduced triangle is not of Type4', graph)
    _expect('reducible-triangle-example', facts.rank == 2 == _rank(reduced),
            f'rank {facts.rank}, reduced rank {_rank(reduced)}; expected 2', graph)
    case = classifiers.classify_rank_eq_girth_family(facts)
    _expect('reducible-triangle-example', case == 'rank-g-1:reduced-triangle-type4', f'matched {case}', graph)


def check_theta_111_example(graph: GainGraph):
    facts = GraphFacts(graph)
    types = {facts.cycle_type(c) for c in graph.all_cycles() if len(c) == 4}
    _expect('theta-1-1-1-example', types == {CycleType.TYPE1, CycleType.TYPE2},
            f'4-cycle types {sorted(t.value for t in types)}', graph)
    _expect('theta-1-1-1-example', facts.rank == 4 == facts.girth.length,
            f'rank {facts.rank}, girth {facts.girth.length}; expected 4 and 4', graph)


def check_k4_counterexample(graph: GainGraph, tol: float = DEFAULT_TOLERANCE) -> str:
    """
    the rank-2 K4 built from non-Lipschitz unit gains. the graph is a finding, not a pass:
    the returned detail is what the verify report keeps
    """
    facts = GraphFacts(graph, tol=tol)
    _expect('k4-counterexample', not classifiers.k4_rank_check(facts) and facts.rank == 2,
            f'expected rank 2, computed {facts.rank}', graph)
    return f'K4 with non-Lipschitz unit gains has rank {facts.rank}, below 4'
