import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from gainrank.algebra.quat import Quaternion, ONE
from gainrank.exceptions import (DisconnectedGraphException, WrongFamilyException, GainRankException)
from gainrank.graphs.gain_graph import GainGraph
from gainrank.utils.consts import Family, FAMILY_PRECEDENCE, Tower, DEFAULT_TOLERANCE

logger = logging.getLogger(__name__)


@dataclass
class PendantTrim:
    graph: GainGraph
    pairs: int
    # (pendant, neighbor) labels in deletion order
    removed: List[Tuple[int, int]] = field(default_factory=list)


@dataclass(frozen=True)
class MultiplePair:
    x: int
    y: int
    k: Quaternion


def trim_pendant_pairs(graph: GainGraph) -> PendantTrim:
    """
    deletes a pendant vertex together with its neighbor until no pendant vertex is left.
    rank(graph) = rank(result.graph) + 2 * result.pairs
    """
    removed = []
    while True:
        pendants = graph.pendant_vertices()
        if not pendants:
            break
        x = pendants[0]
        y = next(iter(graph.neighbors(x)))
        removed.append((graph.labels[x], graph.labels[y]))
        graph = graph.delete_vertices([x, y])
    return PendantTrim(graph, len(removed), removed)


def _check_rank_kept(before: GainGraph, after: GainGraph, step: str):
    if logger.isEnabledFor(logging.DEBUG):
        r_before, r_after = before.rank().rank, after.rank().rank
        if r_before != r_after:
            raise GainRankException(f'{step} changed rank {r_before} -> {r_after}')


def remove_pendant_twins(graph: GainGraph) -> GainGraph:
    """
    deletes the higher-index vertex of any two pendant vertices sharing a neighbor, until none are left
    """
    while True:
        first_pendant: Dict[int, int] = {}
        twin = None
        for x in graph.pendant_vertices():
            y = next(iter(graph.neighbors(x)))
            if y in first_pendant:
                twin = x
                break
            first_pendant[y] = x
        if twin is None:
            return graph
        reduced = graph.delete_vertices([twin])
        _check_rank_kept(graph, reduced, 'pendant twin removal')
        graph = reduced


def _proportional(graph: GainGraph, x: int, y: int, tol: float) -> Optional[Quaternion]:
    common = sorted(graph.neighbors(x))
    if not common:
        return ONE if graph.tower == Tower.EXACT else ONE.to_float()
    z0 = common[0]
    k = graph.gain(x, z0) * graph.gain(y, z0).inverse()
    for z in common[1:]:
        if not graph.gain(x, z).is_close(k * graph.gain(y, z), tol):
            return None
    return k


def find_multiple_vertices(graph: GainGraph, tol: float = DEFAULT_TOLERANCE) -> List[MultiplePair]:
    """
    pairs x < y with N(x) = N(y) and phi_xz = k * phi_yz for a fixed k and every common neighbor z
    """
    tol = 0.0 if graph.tower == Tower.EXACT else tol
    by_neighborhood: Dict[frozenset, List[int]] = {}
    for v in graph.vertices:
        by_neighborhood.setdefault(graph.neighbors(v), []).append(v)

    pairs = []
    for members in by_neighborhood.values():
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                k = _proportional(graph, x, y, tol)
                if k is not None:
                    pairs.append(MultiplePair(x, y, k))
    return sorted(pairs, key=lambda p: (p.x, p.y))


def reduced_graph(graph: GainGraph, rng: Optional[np.random.Generator] = None) -> GainGraph:
    """
    deletes one vertex of a multiple pair until no multiple vertices remain.
    deterministic order keeps the lowest-index vertex of every pair; with `rng` the
    pair and the deleted member are drawn at random
    """
    while True:
        pairs = find_multiple_vertices(graph)
        if not pairs:
            return graph
        if rng is None:
            victim = pairs[0].y
        else:
            pair = pairs[int(rng.integers(len(pairs)))]
            victim = pair.x if rng.random() < 0.5 else pair.y
        reduced = graph.delete_vertices([victim])
        _check_rank_kept(graph, reduced, 'multiple vertex reduction')
        graph = reduced


# recognition

@dataclass
class Shape:
    family: Family
    params: Tuple[int, ...] = ()
    witness: Dict = field(default_factory=dict)

    def validate(self, graph: GainGraph) -> bool:
        validator = _validators.get(self.family)
        return True if validator is None else validator(graph, self)

    def to_dict(self) -> Dict:
        return {'family': self.family.value, 'params': list(self.params),
                'witness': {k: _jsonable(v) for k, v in self.witness.items()}}

    def __str__(self):
        return f'{self.family.value}({",".join(str(p) for p in self.params)})'


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class ShapeReport:
    shape: Shape
    alternatives: List[Shape] = field(default_factory=list)

    @property
    def family(self) -> Family:
        return self.shape.family

    @property
    def params(self) -> Tuple[int, ...]:
        return self.shape.params

    @property
    def witness(self) -> Dict:
        return self.shape.witness

    def find(self, family: Family) -> Optional[Shape]:
        for shape in [self.shape] + self.alternatives:
            if shape.family == family:
                return shape
        return None

    def to_dict(self) -> Dict:
        return {**self.shape.to_dict(), 'alternatives': [str(s) for s in self.alternatives]}


def _walk_cycle(graph: GainGraph, start: int, vertices: Optional[set] = None) -> List[int]:
    allowed = vertices if vertices is not None else set(graph.vertices)
    order = [start]
    prev, cur = None, start
    while True:
        options = sorted(w for w in graph.neighbors(cur) if w in allowed and w != prev)
        nxt = options[0]
        if nxt == start:
            return order
        order.append(nxt)
        prev, cur = cur, nxt


def _walk_branch(graph: GainGraph, start: int, first: int, degree: Dict[int, int]) -> Tuple[int, List[int]]:
    internal = []
    prev, cur = start, first
    while degree[cur] == 2:
        internal.append(cur)
        prev, cur = cur, next(w for w in graph.neighbors(cur) if w != prev and w in degree)
    return cur, internal


def _recognize_path(graph: GainGraph) -> Optional[Shape]:
    if graph.edge_count != graph.n - 1 or max(graph.degrees(), default=0) > 2:
        return None
    if graph.n == 1:
        return Shape(Family.PATH, (1,), {'order': [0]})
    start = min(v for v in graph.vertices if graph.degree(v) == 1)
    order, prev = [start], None
    while len(order) < graph.n:
        nxt = next(w for w in graph.neighbors(order[-1]) if w != prev)
        prev = order[-1]
        order.append(nxt)
    return Shape(Family.PATH, (graph.n,), {'order': order})


def _recognize_star(graph: GainGraph) -> Optional[Shape]:
    if graph.n < 2 or graph.edge_count != graph.n - 1:
        return None
    center = next((v for v in graph.vertices if graph.degree(v) == graph.n - 1), None)
    if center is None:
        return None
    return Shape(Family.STAR, (graph.n,), {'center': center,
                                           'leaves': sorted(graph.neighbors(center))})


def _recognize_cycle(graph: GainGraph) -> Optional[Shape]:
    if graph.n < 3 or any(d != 2 for d in graph.degrees()):
        return None
    return Shape(Family.CYCLE, (graph.n,), {'cycle': _walk_cycle(graph, 0)})


def _recognize_complete(graph: GainGraph) -> Optional[Shape]:
    if graph.n < 3 or graph.edge_count != graph.n * (graph.n - 1) // 2:
        return None
    return Shape(Family.COMPLETE, (graph.n,), {'vertices': list(graph.vertices)})


def _recognize_complete_bipartite(graph: GainGraph) -> Optional[Shape]:
    if graph.n < 2:
        return None
    color = {0: 0}
    queue = [0]
    while queue:
        u = queue.pop()
        for w in graph.neighbors(u):
            if w not in color:
                color[w] = 1 - color[u]
                queue.append(w)
            elif color[w] == color[u]:
                return None
    parts = [sorted(v for v in graph.vertices if color[v] == c) for c in (0, 1)]
    if not parts[1] or graph.edge_count != len(parts[0]) * len(parts[1]):
        return None
    return Shape(Family.COMPLETE_BIPARTITE, (len(parts[0]), len(parts[1])), {'parts': parts})


def _recognize_complete_tripartite(graph: GainGraph) -> Optional[Shape]:
    everyone = frozenset(graph.vertices)
    groups: Dict[frozenset, List[int]] = {}
    for v in graph.vertices:
        groups.setdefault(everyone - graph.neighbors(v), []).append(v)
    if len(groups) != 3 or any(frozenset(members) != key for key, members in groups.items()):
        return None
    parts = sorted((sorted(members) for members in groups.values()), key=lambda p: p[0])
    sizes = [len(p) for p in parts]
    if graph.edge_count != sizes[0] * sizes[1] + sizes[0] * sizes[2] + sizes[1] * sizes[2]:
        return None
    return Shape(Family.COMPLETE_TRIPARTITE, tuple(sizes), {'parts': parts})


def two_core(graph: GainGraph) -> List[int]:
    """
    vertices left after repeatedly stripping vertices of degree <= 1
    """
    degree = {v: graph.degree(v) for v in graph.vertices}
    stack = [v for v, d in degree.items() if d <= 1]
    removed = set()
    while stack:
        v = stack.pop()
        if v in removed:
            continue
        removed.add(v)
        for w in graph.neighbors(v):
            if w not in removed:
                degree[w] -= 1
                if degree[w] <= 1:
                    stack.append(w)
    return [v for v in graph.vertices if v not in removed]


def _recognize_canonical_unicyclic(graph: GainGraph) -> Optional[Shape]:
    if graph.edge_count != graph.n or not graph.pendant_vertices():
        return None
    core = set(two_core(graph))
    stars: Dict[int, List[int]] = {}
    for v in graph.vertices:
        if v in core:
            continue
        if graph.degree(v) != 1:
            return None
        hub = next(iter(graph.neighbors(v)))
        if hub not in core:
            return None
        stars.setdefault(hub, []).append(v)

    cycle = _walk_cycle(graph, min(stars), core)
    starred = [i for i, v in enumerate(cycle) if v in stars]
    segments = []
    for a, b in zip(starred, starred[1:] + [starred[0] + len(cycle)]):
        segments.append([cycle[i % len(cycle)] for i in range(a + 1, b)])
    k = sum(1 for s in segments if len(s) % 2 == 0)
    return Shape(Family.CANONICAL_UNICYCLIC, (len(cycle), len(stars), k),
                 {'cycle': cycle, 'stars': {hub: sorted(leaves) for hub, leaves in sorted(stars.items())},
                  'segments': segments})


def _recognize_bicyclic(graph: GainGraph) -> Optional[Shape]:
    if graph.edge_count != graph.n + 1 or min(graph.degrees(), default=0) < 2:
        return None
    degree = {v: graph.degree(v) for v in graph.vertices}
    branch = sorted(v for v, d in degree.items() if d > 2)

    if len(branch) == 1 and degree[branch[0]] == 4:
        x = branch[0]
        cycles = []
        for first in sorted(graph.neighbors(x)):
            end, internal = _walk_branch(graph, x, first, degree)
            cycle = [x] + internal
            if not any(set(cycle) == set(c) for c in cycles):
                cycles.append(cycle)
        cycles.sort(key=len)
        p, q = len(cycles[0]), len(cycles[1])
        return Shape(Family.INFINITY, (p, 1, q), {'cycles': cycles, 'path': [x]})

    if len(branch) != 2 or any(degree[v] != 3 for v in branch):
        return None

    walks = {v: [_walk_branch(graph, v, first, degree) for first in sorted(graph.neighbors(v))] for v in branch}
    x, y = branch
    if all(end == y for end, _ in walks[x]):
        paths = sorted((internal for _, internal in walks[x]), key=lambda p: (len(p), p))
        return Shape(Family.THETA, tuple(len(p) for p in paths), {'ends': [x, y], 'paths': paths})

    def split(v):
        loop = next(internal for end, internal in walks[v] if end == v)
        bridge = next(internal for end, internal in walks[v] if end != v)
        return [v] + loop, bridge

    cycle_x, bridge = split(x)
    cycle_y, _ = split(y)
    path = [x] + bridge + [y]
    if len(cycle_x) > len(cycle_y):
        cycle_x, cycle_y, path = cycle_y, cycle_x, list(reversed(path))
    return Shape(Family.INFINITY, (len(cycle_x), len(path), len(cycle_y)),
                 {'cycles': [cycle_x, cycle_y], 'path': path})


def _recognize_infinity(graph: GainGraph) -> Optional[Shape]:
    shape = _recognize_bicyclic(graph)
    return shape if shape is not None and shape.family == Family.INFINITY else None


def _recognize_theta(graph: GainGraph) -> Optional[Shape]:
    shape = _recognize_bicyclic(graph)
    return shape if shape is not None and shape.family == Family.THETA else None


_recognizers = {
    Family.PATH: _recognize_path,
    Family.STAR: _recognize_star,
    Family.CYCLE: _recognize_cycle,
    Family.COMPLETE: _recognize_complete,
    Family.COMPLETE_BIPARTITE: _recognize_complete_bipartite,
    Family.COMPLETE_TRIPARTITE: _recognize_complete_tripartite,
    Family.CANONICAL_UNICYCLIC: _recognize_canonical_unicyclic,
    Family.INFINITY: _recognize_infinity,
    Family.THETA: _recognize_theta,
}


def recognize(graph: GainGraph) -> ShapeReport:
    """
    every structural family the graph belongs to, each with a certifying witness.
    the highest-precedence match is the primary shape
    """
    if not graph.is_connected():
        raise DisconnectedGraphException('recognize needs a connected graph')

    matches = []
    for family in FAMILY_PRECEDENCE:
        shape = _recognizers[family](graph)
        if shape is not None:
            if not shape.validate(graph):
                raise GainRankException(f'{shape} witness does not validate')
            matches.append(shape)

    if not matches:
        return ShapeReport(Shape(Family.OTHER))
    primary = matches[-1]
    return ShapeReport(primary, [s for s in reversed(matches[:-1])])


@dataclass
class BicyclicCore:
    shape: Shape
    # core vertex indices in the input graph, in the core graph's order
    vertices: List[int]
    graph: GainGraph
    has_pendants: bool


def bicyclic_core(graph: GainGraph) -> BicyclicCore:
    """
    strips the pendant trees of a connected bicyclic graph and recognizes the infinity / theta skeleton
    """
    if not graph.is_connected() or graph.edge_count != graph.n + 1:
        raise WrongFamilyException(f'{graph} is not a connected bicyclic graph')
    vertices = two_core(graph)
    core = graph.induced_subgraph(vertices)
    shape = _recognize_bicyclic(core)
    if shape is None:
        raise WrongFamilyException(f'core of {graph} is neither an infinity nor a theta graph')
    return BicyclicCore(shape, vertices, core, len(vertices) < graph.n)


# witness validation

def _is_cycle(graph: GainGraph, cycle: List[int]) -> bool:
    return len(cycle) >= 3 and len(set(cycle)) == len(cycle) and \
        all(graph.has_edge(a, b) for a, b in zip(cycle, cycle[1:] + cycle[:1]))


def _is_path(graph: GainGraph, path: List[int]) -> bool:
    return len(set(path)) == len(path) and all(graph.has_edge(a, b) for a, b in zip(path, path[1:]))


def _covers(graph: GainGraph, vertices) -> bool:
    return sorted(vertices) == list(graph.vertices)


def _validate_parts(graph: GainGraph, shape: Shape) -> bool:
    parts = shape.witness['parts']
    if not _covers(graph, [v for p in parts for v in p]):
        return False
    side = {v: i for i, p in enumerate(parts) for v in p}
    return all(graph.has_edge(u, v) == (side[u] != side[v]) for u in graph.vertices for v in graph.vertices if u < v)


def _validate_canonical(graph: GainGraph, shape: Shape) -> bool:
    w = shape.witness
    leaves = [leaf for group in w['stars'].values() for leaf in group]
    return _is_cycle(graph, w['cycle']) and _covers(graph, w['cycle'] + leaves) and \
        graph.edge_count == graph.n and \
        all(graph.neighbors(leaf) == {hub} for hub, group in w['stars'].items() for leaf in group)


def _validate_infinity(graph: GainGraph, shape: Shape) -> bool:
    w = shape.witness
    a, b = w['cycles']
    path = w['path']
    return _is_cycle(graph, a) and _is_cycle(graph, b) and _is_path(graph, path) and \
        path[0] in a and path[-1] in b and not set(a) & set(b) - set(path) and \
        _covers(graph, set(a) | set(b) | set(path)) and graph.edge_count == graph.n + 1


def _validate_theta(graph: GainGraph, shape: Shape) -> bool:
    x, y = shape.witness['ends']
    paths = shape.witness['paths']
    internal = [v for p in paths for v in p]
    return all(_is_path(graph, [x] + p + [y]) for p in paths) and len(set(internal)) == len(internal) and \
        _covers(graph, internal + [x, y]) and graph.edge_count == graph.n + 1


_validators = {
    Family.PATH: lambda g, s: _is_path(g, s.witness['order']) and _covers(g, s.witness['order']),
    Family.STAR: lambda g, s: all(g.neighbors(leaf) == {s.witness['center']} for leaf in s.witness['leaves']) and
    _covers(g, s.witness['leaves'] + [s.witness['center']]),
    Family.CYCLE: lambda g, s: _is_cycle(g, s.witness['cycle']) and _covers(g, s.witness['cycle']),
    Family.COMPLETE: lambda g, s: g.edge_count == g.n * (g.n - 1) // 2,
    Family.COMPLETE_BIPARTITE: _validate_parts,
    Family.COMPLETE_TRIPARTITE: _validate_parts,
    Family.CANONICAL_UNICYCLIC: _validate_canonical,
    Family.INFINITY: _validate_infinity,
    Family.THETA: _validate_theta,
}
