import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from gainrank.algebra import qlinalg
from gainrank.algebra.qlinalg import QMatrix, RankReport
from gainrank.algebra.quat import Quaternion, ONE, ZERO, ensure_unit, product
from gainrank.exceptions import (NotACycleException, DisconnectedGraphException, VertexRangeException,
                                 AmbiguousCycleTypeException)
from gainrank.utils.consts import (Tower, CycleType, RankMethod, DEFAULT_TOLERANCE, TYPE_ZERO_TOLERANCE,
                                   TYPE_NONZERO_THRESHOLD)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class GirthResult:
    length: int
    cycle: Tuple[int, ...]


@dataclass(frozen=True)
class CycleReport:
    cycle_type: CycleType
    gain: Quaternion
    approximate: bool = False
    ambiguous: bool = False

    def to_dict(self) -> Dict:
        return {'type': self.cycle_type.value,
                'gain': [str(c) for c in self.gain.coefficients],
                'approximate': self.approximate,
                'ambiguous': self.ambiguous}


class SwitchingFunction:
    def __init__(self, xi: Mapping[int, Quaternion]):
        self.xi: Dict[int, Quaternion] = dict(xi)

    def __getitem__(self, vertex: int) -> Quaternion:
        return self.xi[vertex]

    def is_total(self, n: int) -> bool:
        return all(v in self.xi for v in range(n))

    @classmethod
    def identity(cls, n: int) -> 'SwitchingFunction':
        return cls({v: ONE for v in range(n)})


def classify_gain(length: int, gain: Quaternion, strict: bool = False) -> CycleReport:
    """
    type of a cycle of the given length with cycle gain `gain`
    :param length:
    :param gain:
    :param strict: raise when a float-tower decision lands between the zero and nonzero thresholds
    :return:
    """
    if length % 2 == 0:
        target = ONE if (length // 2) % 2 == 0 else -ONE
        deviation = gain - target
        if gain.tower == Tower.EXACT:
            return CycleReport(CycleType.TYPE1 if deviation.is_zero() else CycleType.TYPE2, gain)
        size = math.sqrt(deviation.norm_sq())
        decided = CycleType.TYPE1 if size < TYPE_ZERO_TOLERANCE else CycleType.TYPE2
    else:
        sign = 1 if ((length - 1) // 2) % 2 == 0 else -1
        real = sign * gain.re
        if gain.tower == Tower.EXACT:
            return CycleReport(CycleType.TYPE4 if real == 0 else CycleType.TYPE3, gain)
        size = abs(real)
        decided = CycleType.TYPE4 if size < TYPE_ZERO_TOLERANCE else CycleType.TYPE3

    ambiguous = TYPE_ZERO_TOLERANCE <= size <= TYPE_NONZERO_THRESHOLD
    if ambiguous and strict:
        raise AmbiguousCycleTypeException(f'cycle of length {length} with gain {gain} is within the '
                                          f'ambiguous zone ({size:.3e})')
    return CycleReport(decided, gain, approximate=True, ambiguous=ambiguous)


class GainGraph:
    """
    simple graph with unit quaternion gains. gains are stored for the orientation
    min(u, v) -> max(u, v); the reverse orientation reads the conjugate
    """

    def __init__(self, n: int, gains: Optional[Mapping[Edge, Quaternion]] = None,
                 labels: Optional[Sequence[int]] = None, validate: bool = True):
        self.n = n
        self._gains: Dict[Edge, Quaternion] = {}
        adjacency: List[set] = [set() for _ in range(n)]
        for (u, v), gain in (gains or {}).items():
            self._check_vertex(u)
            self._check_vertex(v)
            if u == v:
                raise ValueError(f'loop at vertex {u}')
            if u > v:
                u, v, gain = v, u, gain.conj()
            if (u, v) in self._gains:
                raise ValueError(f'duplicate edge {u}-{v}')
            self._gains[(u, v)] = ensure_unit(gain) if validate else gain
            adjacency[u].add(v)
            adjacency[v].add(u)
        self._adjacency: Tuple[FrozenSet[int], ...] = tuple(frozenset(a) for a in adjacency)
        self.labels: Tuple[int, ...] = tuple(labels) if labels is not None else tuple(range(n))
        if len(self.labels) != n:
            raise ValueError('labels must name every vertex')

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int, Quaternion]], labels=None) -> 'GainGraph':
        gains = {}
        for u, v, gain in edges:
            key = (min(u, v), max(u, v))
            if key in gains:
                raise ValueError(f'duplicate edge {u}-{v}')
            gains[key] = gain if u < v else gain.conj()
        return cls(n, gains, labels)

    @classmethod
    def from_underlying(cls, n: int, pairs: Iterable[Edge], gain: Quaternion = ONE) -> 'GainGraph':
        return cls(n, {(u, v): gain for u, v in pairs})

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise VertexRangeException(f'vertex {v} out of range 0..{self.n - 1}')

    # queries

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_count(self) -> int:
        return len(self._gains)

    @property
    def tower(self) -> Tower:
        return Tower.FLOAT if any(g.tower == Tower.FLOAT for g in self._gains.values()) else Tower.EXACT

    def edges(self) -> List[Tuple[int, int, Quaternion]]:
        return [(u, v, self._gains[(u, v)]) for u, v in sorted(self._gains)]

    def edge_pairs(self) -> List[Edge]:
        return sorted(self._gains)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._gains

    def gain(self, u: int, v: int) -> Quaternion:
        if u < v:
            return self._gains[(u, v)]
        return self._gains[(v, u)].conj()

    def neighbors(self, x: int) -> FrozenSet[int]:
        self._check_vertex(x)
        return self._adjacency[x]

    def degree(self, x: int) -> int:
        return len(self.neighbors(x))

    def degrees(self) -> List[int]:
        return [len(a) for a in self._adjacency]

    def pendant_vertices(self) -> List[int]:
        return [v for v in self.vertices if len(self._adjacency[v]) == 1]

    def __eq__(self, other):
        return isinstance(other, GainGraph) and self.n == other.n and self._gains == other._gains

    def __hash__(self):
        return hash((self.n, frozenset(self._gains.items())))

    def __repr__(self):
        return f'GainGraph(n={self.n}, m={self.edge_count})'

    # matrices

    def adjacency_matrix(self) -> QMatrix:
        zero = ZERO if self.tower == Tower.EXACT else ZERO.to_float()
        rows = [[zero] * self.n for _ in range(self.n)]
        for (u, v), gain in self._gains.items():
            rows[u][v] = gain
            rows[v][u] = gain.conj()
        return QMatrix(rows, cols=self.n)

    def rank(self, method: RankMethod = RankMethod.ELIMINATION, tol: float = DEFAULT_TOLERANCE) -> RankReport:
        return qlinalg.rank(self.adjacency_matrix(), method, tol)

    # cycles

    def girth(self) -> Optional[GirthResult]:
        """
        shortest cycle by a breadth-first search from every vertex.
        :return: length with one witness cycle, None for a forest
        """
        best: Optional[GirthResult] = None
        for source in self.vertices:
            dist = {source: 0}
            parent = {source: None}
            queue = deque([source])
            while queue:
                u = queue.popleft()
                if best is not None and 2 * dist[u] + 1 >= best.length:
                    break
                for w in sorted(self._adjacency[u]):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        length = dist[u] + dist[w] + 1
                        if best is None or length < best.length:
                            cycle = self._close_cycle(parent, u, w)
                            if cycle is not None:
                                best = GirthResult(length, cycle)
        return best

    @staticmethod
    def _close_cycle(parent: Dict[int, Optional[int]], u: int, w: int) -> Optional[Tuple[int, ...]]:
        def to_root(x):
            path = [x]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path

        cycle = list(reversed(to_root(u))) + to_root(w)[:-1]
        return tuple(cycle) if len(set(cycle)) == len(cycle) else None

    def all_cycles(self) -> List[List[int]]:
        return [list(c) for c in nx.simple_cycles(self.to_networkx())]

    def validate_cycle(self, cycle: Sequence[int]):
        if len(cycle) < 3 or len(set(cycle)) != len(cycle):
            raise NotACycleException(f'{list(cycle)} is not a cycle: needs 3 or more distinct vertices')
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            if not (0 <= a < self.n and 0 <= b < self.n) or not self.has_edge(a, b):
                raise NotACycleException(f'{list(cycle)} is not a cycle: {a}-{b} is not an edge')

    def cycle_gain(self, cycle: Sequence[int]) -> Quaternion:
        self.validate_cycle(cycle)
        closed = list(cycle) + [cycle[0]]
        return product(self.gain(a, b) for a, b in zip(closed, closed[1:]))

    def cycle_report(self, cycle: Sequence[int], strict: bool = False) -> CycleReport:
        return classify_gain(len(cycle), self.cycle_gain(cycle), strict)

    def classify_cycle(self, cycle: Sequence[int], strict: bool = False) -> CycleType:
        return self.cycle_report(cycle, strict).cycle_type

    # switching

    def switch(self, xi: SwitchingFunction) -> 'GainGraph':
        if not xi.is_total(self.n):
            raise ValueError('switching function must be defined on every vertex')
        gains = {(u, v): xi[u].inverse() * gain * xi[v] for (u, v), gain in self._gains.items()}
        return GainGraph(self.n, gains, self.labels, validate=self.tower == Tower.EXACT)

    def bfs_tree(self, root: int) -> Dict[int, Optional[int]]:
        """
        parent of every vertex reachable from root, in breadth-first order
        """
        self._check_vertex(root)
        parent: Dict[int, Optional[int]] = {root: None}
        parent.update(nx.bfs_predecessors(self._underlying, root, sort_neighbors=sorted))
        return parent

    def normalize_by_spanning_tree(self, root: int = 0) -> Tuple['GainGraph', SwitchingFunction]:
        """
        switches every edge of a breadth-first spanning tree to gain 1.
        xi(v) is the gain of the tree path from v to the root
        """
        parent = self.bfs_tree(root)
        if len(parent) != self.n:
            raise DisconnectedGraphException('spanning tree normalization needs a connected graph')
        one = ONE if self.tower == Tower.EXACT else ONE.to_float()
        xi = {root: one}
        for v, p in parent.items():
            if p is not None:
                xi[v] = self.gain(v, p) * xi[p]
        switching = SwitchingFunction(xi)
        return self.switch(switching), switching

    # subgraphs

    def induced_subgraph(self, subset: Iterable[int]) -> 'GainGraph':
        keep = sorted(set(subset))
        for v in keep:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(keep)}
        gains = {(index[u], index[v]): g for (u, v), g in self._gains.items() if u in index and v in index}
        return GainGraph(len(keep), gains, [self.labels[v] for v in keep], validate=False)

    def delete_vertices(self, subset: Iterable[int]) -> 'GainGraph':
        removed = set(subset)
        for v in removed:
            self._check_vertex(v)
        return self.induced_subgraph(v for v in self.vertices if v not in removed)

    def connected_components(self) -> List[List[int]]:
        return [sorted(c) for c in nx.connected_components(self._underlying)]

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self._underlying)

    def is_dominating_set(self, subset: Iterable[int]) -> bool:
        chosen = set(subset)
        for v in chosen:
            self._check_vertex(v)
        return all(v in chosen or self._adjacency[v] & chosen for v in self.vertices)

    # rebuilding

    def with_gains(self, changes: Mapping[Edge, Quaternion]) -> 'GainGraph':
        gains = dict(self._gains)
        for (u, v), gain in changes.items():
            key = (min(u, v), max(u, v))
            if key not in gains:
                raise ValueError(f'{u}-{v} is not an edge')
            gains[key] = gain if u < v else gain.conj()
        return GainGraph(self.n, gains, self.labels)

    def to_float(self) -> 'GainGraph':
        return GainGraph(self.n, {e: g.to_float() for e, g in self._gains.items()}, self.labels, validate=False)

    @cached_property
    def _underlying(self) -> nx.Graph:
        return nx.freeze(self.to_networkx())

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self._gains)
        return graph
