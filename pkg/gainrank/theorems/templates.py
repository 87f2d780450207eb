"""
named gain graph shapes with transcribed rank conditions.

vertex labels are 1-based everywhere in this module so the condition cycles read
like the drawings they were taken from; `Template.build` shifts them to 0-based.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

import networkx as nx

from gainrank.algebra.quat import Quaternion, ONE, I, J, K
from gainrank.graphs.gain_graph import GainGraph
from gainrank.graphs.generators import theta_graph
from gainrank.utils.consts import CycleType, Tower, TYPE_ZERO_TOLERANCE

logger = logging.getLogger(__name__)

LabeledEdge = Tuple[int, int]


@dataclass(frozen=True)
class Prediction:
    relation: str
    value: int

    @classmethod
    def equal(cls, value: int) -> 'Prediction':
        return cls('=', value)

    @classmethod
    def greater_than(cls, value: int) -> 'Prediction':
        return cls('>', value)

    @classmethod
    def not_equal(cls, value: int) -> 'Prediction':
        return cls('!=', value)

    def holds_for(self, rank: int) -> bool:
        if self.relation == '=':
            return rank == self.value
        if self.relation == '>':
            return rank > self.value
        return rank != self.value

    def __str__(self):
        return str(self.value) if self.relation == '=' else f'{self.relation}{self.value}'


class CycleView:
    """
    reads cycle gains of a graph through a template labelling
    """

    def __init__(self, graph: GainGraph, mapping: Mapping[int, int]):
        self.graph = graph
        self.mapping = dict(mapping)
        self._tol = 0.0 if graph.tower == Tower.EXACT else TYPE_ZERO_TOLERANCE

    def _cycle(self, labels: Sequence[int]):
        return [self.mapping[label] for label in labels]

    def gain(self, *labels: int) -> Quaternion:
        return self.graph.cycle_gain(self._cycle(labels))

    def real(self, *labels: int):
        return self.gain(*labels).re

    def is_type(self, cycle_type: CycleType, *labels: int) -> bool:
        return self.graph.classify_cycle(self._cycle(labels), strict=True) == cycle_type

    def vanishes(self, value) -> bool:
        if isinstance(value, Quaternion):
            return value.is_zero(self._tol)
        return abs(value) <= self._tol


Rule = Callable[[CycleView], Prediction]


@dataclass(frozen=True)
class GainSample:
    label: str
    gains: Mapping[LabeledEdge, Quaternion]
    expected: Prediction


@dataclass(frozen=True)
class Template:
    name: str
    n: int
    edges: Tuple[LabeledEdge, ...]
    rule: Rule
    samples: Tuple[GainSample, ...] = field(default_factory=tuple)

    def underlying(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edges)
        return graph

    def build(self, gains: Optional[Mapping[LabeledEdge, Quaternion]] = None) -> GainGraph:
        graph = GainGraph.from_underlying(self.n, [(u - 1, v - 1) for u, v in self.edges])
        if gains:
            graph = graph.with_gains({(u - 1, v - 1): g for (u, v), g in gains.items()})
        return graph

    def match(self, graph: GainGraph) -> Optional[Dict[int, int]]:
        """
        an isomorphism of the underlying graphs as template label -> graph vertex, or None
        """
        if graph.n != self.n or graph.edge_count != len(self.edges):
            return None
        matcher = nx.algorithms.isomorphism.GraphMatcher(graph.to_networkx(), self.underlying())
        if not matcher.is_isomorphic():
            return None
        return {label: vertex for vertex, label in matcher.mapping.items()}

    def predict(self, graph: GainGraph, mapping: Mapping[int, int]) -> Prediction:
        return self.rule(CycleView(graph, mapping))


def _sample(label: str, expected: Prediction, **gains) -> GainSample:
    # keyword names like e1_3 stand for the oriented edge 1 -> 3
    parsed = {}
    for key, gain in gains.items():
        u, v = key[1:].split('_')
        parsed[(int(u), int(v))] = gain
    return GainSample(label, parsed, expected)


def _equal_or_more(holds: bool) -> Prediction:
    return Prediction.equal(4) if holds else Prediction.greater_than(4)


def _four_or_not(holds: bool) -> Prediction:
    return Prediction.equal(4) if holds else Prediction.not_equal(4)


T1, T2, T3, T4 = CycleType.TYPE1, CycleType.TYPE2, CycleType.TYPE3, CycleType.TYPE4
EQ2, EQ3, EQ4 = Prediction.equal(2), Prediction.equal(3), Prediction.equal(4)
GT4, NE4 = Prediction.greater_than(4), Prediction.not_equal(4)

HURWITZ_A = Quaternion.exact(1, 1, 1, 1) / 2
HURWITZ_B = Quaternion.exact(-1, 1, 1, 1) / 2

# gains of the worked theta(1,1,1) example, stored min -> max
THETA_111_GAINS = {(1, 2): I, (2, 5): J, (4, 5): -J, (1, 4): -K, (2, 3): I, (3, 4): K}

# pendant-free bicyclic shapes

INFINITY_313 = Template(
    'infinity-3-1-3', 5, ((1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)),
    lambda p: _equal_or_more(p.vanishes(p.real(1, 3, 2) + p.real(1, 5, 4))),
    (_sample('conforming', EQ4, e1_3=I, e1_5=I), _sample('all ones', GT4)))

INFINITY_314 = Template(
    'infinity-3-1-4', 6, ((1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (3, 6)),
    lambda p: _equal_or_more(p.is_type(T1, 3, 4, 5, 6) and p.is_type(T4, 1, 2, 3)),
    (_sample('conforming', EQ4, e1_2=I), _sample('all ones', GT4)))

INFINITY_414 = Template(
    'infinity-4-1-4', 7, ((1, 2), (2, 4), (3, 4), (1, 3), (4, 5), (5, 6), (6, 7), (4, 7)),
    lambda p: _equal_or_more(p.is_type(T1, 1, 2, 4, 3) and p.is_type(T1, 4, 5, 6, 7)),
    (_sample('all ones', EQ4), _sample('square of type 2', GT4, e1_2=I)))

INFINITY_323 = Template(
    'infinity-3-2-3', 6, ((1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (4, 6)),
    lambda p: GT4,
    (_sample('all ones', GT4), _sample('triangles of type 4', GT4, e1_2=I, e5_6=I)))


def _theta_011(p: CycleView) -> Prediction:
    if p.is_type(T1, 1, 2, 3, 4):
        return EQ2 if p.is_type(T4, 1, 2, 4) else EQ3
    return EQ4


THETA_011 = Template(
    'theta-0-1-1', 4, ((1, 2), (2, 3), (3, 4), (1, 4), (2, 4)), _theta_011,
    (_sample('triangle of type 4', EQ2, e2_4=I), _sample('all ones', EQ3),
     _sample('square of type 2', EQ4, e2_3=I)))

THETA_012 = Template(
    'theta-0-1-2', 5, ((1, 2), (2, 5), (1, 5), (2, 3), (3, 4), (4, 5)),
    lambda p: _equal_or_more(p.vanishes(p.real(1, 2, 5) - p.real(1, 2, 3, 4, 5))),
    (_sample('all ones', EQ4), _sample('negated chord', GT4, e2_5=-ONE)))

THETA_013 = Template(
    'theta-0-1-3', 6, ((1, 2), (2, 6), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)),
    lambda p: _equal_or_more(p.is_type(T4, 1, 2, 6) and p.is_type(T1, 1, 2, 3, 4, 5, 6)),
    (_sample('conforming', EQ4, e2_6=I, e3_4=-ONE), _sample('all ones', GT4)))

THETA_022 = Template(
    'theta-0-2-2', 6, ((1, 2), (2, 5), (5, 6), (1, 6), (2, 3), (3, 4), (4, 5)),
    lambda p: _equal_or_more(p.vanishes(p.gain(1, 2, 3, 4, 5, 6) - p.gain(1, 2, 5, 6) + ONE)),
    (_sample('conforming', EQ4, e2_5=HURWITZ_A, e3_4=HURWITZ_B), _sample('all ones', GT4)))

THETA_111 = Template(
    'theta-1-1-1', 5, ((1, 2), (2, 5), (4, 5), (1, 4), (2, 3), (3, 4)),
    lambda p: EQ2 if p.is_type(T1, 1, 2, 5, 4) and p.is_type(T1, 1, 2, 3, 4) else EQ4,
    (_sample('all ones', EQ2), GainSample('mixed squares', THETA_111_GAINS, EQ4)))

THETA_112 = Template(
    'theta-1-1-2', 6, ((1, 2), (2, 6), (5, 6), (1, 5), (2, 3), (3, 4), (4, 5)),
    lambda p: _equal_or_more(p.is_type(T1, 1, 2, 6, 5) and p.is_type(T4, 1, 2, 3, 4, 5)),
    (_sample('conforming', EQ4, e3_4=I), _sample('all ones', GT4)))

THETA_113 = Template(
    'theta-1-1-3', 7, ((1, 2), (2, 7), (6, 7), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)),
    lambda p: _equal_or_more(p.is_type(T1, 1, 2, 7, 6) and p.is_type(T1, 1, 2, 3, 4, 5, 6)),
    (_sample('conforming', EQ4, e3_4=-ONE), _sample('all ones', GT4)))

PENDANT_FREE_TEMPLATES: Tuple[Template, ...] = (
    INFINITY_313, INFINITY_314, INFINITY_414, INFINITY_323, THETA_011, THETA_012, THETA_013, THETA_022,
    THETA_111, THETA_112, THETA_113)

# rank-4 rows of the pendant-free table that can occur at girth 4
GIRTH4_PENDANT_FREE = ('infinity-4-1-4', 'theta-0-2-2', 'theta-1-1-1', 'theta-1-1-2', 'theta-1-1-3')

# bicyclic shapes with pendant vertices and no pendant twins

_THETA_011_EDGES = THETA_011.edges
_THETA_012_EDGES = THETA_012.edges
_THETA_111_EDGES = THETA_111.edges


def _theta_011_rank2(p: CycleView) -> bool:
    return p.is_type(T4, 1, 2, 4) and p.is_type(T1, 1, 2, 3, 4)


def _theta_111_rank2(p: CycleView) -> bool:
    return p.is_type(T1, 1, 2, 5, 4) and p.is_type(T1, 1, 2, 3, 4)


PENDANT_TEMPLATES: Tuple[Template, ...] = (
    Template('theta-0-1-1+leaf@deg2', 5, _THETA_011_EDGES + ((1, 5),),
             lambda p: _four_or_not(p.is_type(T4, 2, 3, 4)),
             (_sample('conforming', EQ4, e3_4=I), _sample('all ones', NE4))),
    Template('theta-0-1-1+leaf@deg3', 5, _THETA_011_EDGES + ((2, 5),), lambda p: EQ4,
             (_sample('all ones', EQ4), _sample('chord i', EQ4, e2_4=I))),
    Template('theta-0-1-1+leaves@deg3', 6, _THETA_011_EDGES + ((2, 5), (4, 6)), lambda p: EQ4,
             (_sample('all ones', EQ4), _sample('mixed', EQ4, e2_3=J, e1_4=K))),
    Template('theta-0-1-1+path@deg2', 6, _THETA_011_EDGES + ((1, 5), (5, 6)),
             lambda p: _four_or_not(_theta_011_rank2(p)),
             (_sample('conforming', EQ4, e2_4=I), _sample('all ones', NE4))),
    Template('theta-0-1-1+path@deg3', 6, _THETA_011_EDGES + ((2, 5), (5, 6)),
             lambda p: _four_or_not(_theta_011_rank2(p)),
             (_sample('conforming', EQ4, e2_4=I), _sample('all ones', NE4))),
    Template('theta-0-1-2+leaf@apex', 6, _THETA_012_EDGES + ((1, 6),),
             lambda p: _four_or_not(p.is_type(T1, 2, 3, 4, 5)),
             (_sample('all ones', EQ4), _sample('square of type 2', NE4, e3_4=I))),
    Template('theta-1-1-1+leaf@deg2', 6, _THETA_111_EDGES + ((5, 6),),
             lambda p: _four_or_not(p.is_type(T1, 1, 2, 3, 4)),
             (_sample('all ones', EQ4), _sample('square of type 2', NE4, e2_3=I))),
    Template('theta-1-1-1+leaf@deg3', 6, _THETA_111_EDGES + ((2, 6),), lambda p: EQ4,
             (_sample('all ones', EQ4), GainSample('mixed squares', THETA_111_GAINS, EQ4))),
    Template('theta-1-1-1+leaves@deg3', 7, _THETA_111_EDGES + ((2, 6), (4, 7)), lambda p: EQ4,
             (_sample('all ones', EQ4), GainSample('mixed squares', THETA_111_GAINS, EQ4))),
    Template('theta-1-1-1+path@deg2', 7, _THETA_111_EDGES + ((1, 6), (6, 7)),
             lambda p: _four_or_not(_theta_111_rank2(p)),
             (_sample('all ones', EQ4), _sample('square of type 2', NE4, e2_3=I))),
    Template('theta-1-1-1+path@deg3', 7, _THETA_111_EDGES + ((2, 6), (6, 7)),
             lambda p: _four_or_not(_theta_111_rank2(p)),
             (_sample('all ones', EQ4), _sample('square of type 2', NE4, e2_3=I))),
)

# rows whose reduced graph certifies rank = girth = 4
GIRTH4_PENDANT = tuple(t.name for t in PENDANT_TEMPLATES if t.name.startswith('theta-1-1-1+'))

# drawing names of the table shapes, numbered in table order
TEMPLATE_LABELS: Dict[str, str] = {
    t.name: f'G\u0303{i}' for i, t in enumerate(PENDANT_FREE_TEMPLATES + PENDANT_TEMPLATES, 1)}


def find_template(templates: Sequence[Template], graph: GainGraph) -> Optional[Tuple[Template, Dict[int, int]]]:
    for template in templates:
        mapping = template.match(graph)
        if mapping is not None:
            return template, mapping
    return None


def template_by_name(name: str) -> Template:
    for template in PENDANT_FREE_TEMPLATES + PENDANT_TEMPLATES:
        if template.name == name:
            return template
    raise KeyError(f'unknown template : {name}')


# shapes with rank equal to girth >= 5 when every cycle has Type1

SUBDIVIDED_K4 = Template(
    'subdivided-k4', 10,
    ((1, 2), (2, 3), (3, 4), (4, 5), (5, 9), (1, 9), (5, 6), (6, 7), (7, 8), (1, 8), (7, 10), (3, 10)),
    lambda p: Prediction.equal(6))


def theta_133_type1() -> GainGraph:
    # -1 on the short path turns both 6-cycles into Type1; the 8-cycle avoids it
    return theta_graph(1, 3, 3).with_gains({(0, 2): -ONE})


def theta_333_type1() -> GainGraph:
    return theta_graph(3, 3, 3)


def subdivided_k4_type1() -> GainGraph:
    # -1 on one half of every subdivided edge
    return SUBDIVIDED_K4.build({(1, 2): -ONE, (3, 4): -ONE, (5, 9): -ONE, (5, 6): -ONE, (7, 8): -ONE,
                                (7, 10): -ONE})


# worked examples

def k32_example() -> GainGraph:
    """
    K_{3,2} with parts {1,2,3}, {4,5}; every 4-cycle has gain 1, rank 2
    """
    return GainGraph.from_edges(5, [(0, 3, I), (1, 3, -K), (2, 3, J), (0, 4, I), (1, 4, -K), (2, 4, J)])


def reducible_triangle_example() -> GainGraph:
    """
    vertices 1 and 3 are multiple with k = -k; reduces to a Type4 triangle, rank 2
    """
    return GainGraph.from_edges(4, [(0, 1, I), (1, 3, -I), (0, 3, J), (2, 1, J), (2, 3, -I)])


def theta_111_example() -> GainGraph:
    """
    theta(1,1,1) with one Type1 and one Type2 square, rank 4
    """
    return THETA_111.build(THETA_111_GAINS)


def k4_rank2_counterexample() -> GainGraph:
    """
    float-tower K4 with rank 2. switched so every edge at vertex 1 has gain 1;
    rows 3 and 4 are left combinations of rows 1 and 2
    """
    a = Quaternion.approx(0.0, 1.0)
    b = Quaternion.approx(0.0, 0.5, math.sqrt(3) / 2)
    c = b - a
    one = ONE.to_float()
    return GainGraph.from_edges(4, [(0, 1, one), (0, 2, one), (0, 3, one), (1, 2, a), (1, 3, b), (2, 3, c)])
