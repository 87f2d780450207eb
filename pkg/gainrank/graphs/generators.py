import logging
from itertools import combinations
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from gainrank.algebra.quat import Quaternion, ONE, I, random_gain
from gainrank.exceptions import ParityMismatchException
from gainrank.graphs.gain_graph import GainGraph, SwitchingFunction, Edge
from gainrank.utils.consts import CycleType, GainSet, Tower

logger = logging.getLogger(__name__)

# masks per enumeration work unit
UNIT_SIZE = 1 << 12


def type_gain(length: int, cycle_type: CycleType) -> Quaternion:
    """
    a cycle gain realizing `cycle_type` on a cycle of the given length
    """
    if cycle_type.even != (length % 2 == 0):
        raise ParityMismatchException(f'{cycle_type.name} is impossible on a cycle of length {length}')
    if length % 2 == 0:
        sign = ONE if (length // 2) % 2 == 0 else -ONE
        return sign if cycle_type == CycleType.TYPE1 else I * sign
    sign = ONE if ((length - 1) // 2) % 2 == 0 else -ONE
    return sign if cycle_type == CycleType.TYPE3 else sign * I


def cycle_pairs(vertices: Sequence[int]) -> List[Edge]:
    return [(vertices[i], vertices[(i + 1) % len(vertices)]) for i in range(len(vertices))]


def with_cycle_gain(graph: GainGraph, cycle: Sequence[int], gain: Quaternion) -> GainGraph:
    """
    puts the whole cycle gain on the closing edge cycle[-1] -> cycle[0]. the other
    cycle edges must already carry gain 1
    """
    return graph.with_gains({(cycle[-1], cycle[0]): gain})


def path_graph(n: int, rng: Optional[np.random.Generator] = None,
               gain_set: GainSet = GainSet.LIPSCHITZ) -> GainGraph:
    pairs = [(i, i + 1) for i in range(n - 1)]
    if rng is None:
        return GainGraph.from_underlying(n, pairs)
    return random_gains(n, pairs, rng, gain_set)


def cycle_graph(n: int, cycle_type: Optional[CycleType] = None, gain: Optional[Quaternion] = None) -> GainGraph:
    graph = GainGraph.from_underlying(n, cycle_pairs(list(range(n))))
    if cycle_type is not None:
        gain = type_gain(n, cycle_type)
    if gain is not None:
        graph = with_cycle_gain(graph, list(range(n)), gain)
    return graph


def star_graph(n: int) -> GainGraph:
    return GainGraph.from_underlying(n, [(0, i) for i in range(1, n)])


def complete_graph(n: int) -> GainGraph:
    return GainGraph.from_underlying(n, combinations(range(n), 2))


def complete_bipartite_graph(a: int, b: int) -> GainGraph:
    return GainGraph.from_underlying(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def complete_tripartite_graph(r: int, s: int, t: int) -> GainGraph:
    parts = [range(0, r), range(r, r + s), range(r + s, r + s + t)]
    pairs = [(u, v) for x, y in combinations(parts, 2) for u in x for v in y]
    return GainGraph.from_underlying(r + s + t, pairs)


def infinity_pairs(p: int, l: int, q: int) -> Tuple[int, List[Edge]]:
    """
    two cycles C_p, C_q joined by a path with l vertices (l = 1 shares a vertex).
    cycle C_p is 0..p-1, the joining path starts at 0
    """
    pairs = cycle_pairs(list(range(p)))
    path = [0] + list(range(p, p + l - 1))
    pairs += [(path[i], path[i + 1]) for i in range(len(path) - 1)]
    v = path[-1]
    start = p + l - 1
    pairs += cycle_pairs([v] + list(range(start, start + q - 1)))
    return p + l + q - 2, pairs


def theta_pairs(p: int, l: int, q: int) -> Tuple[int, List[Edge]]:
    """
    vertices 0 and 1 joined by three paths with p, l, q internal vertices
    """
    pairs = []
    nxt = 2
    for internal in (p, l, q):
        chain = [0] + list(range(nxt, nxt + internal)) + [1]
        nxt += internal
        pairs += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    return p + l + q + 2, pairs


def infinity_graph(p: int, l: int, q: int) -> GainGraph:
    return GainGraph.from_underlying(*infinity_pairs(p, l, q))


def theta_graph(p: int, l: int, q: int) -> GainGraph:
    return GainGraph.from_underlying(*theta_pairs(p, l, q))


def canonical_unicyclic_graph(g: int, leaves: Mapping[int, int], cycle_gain: Quaternion = ONE) -> GainGraph:
    """
    cycle 0..g-1 with `leaves[v]` pendant vertices hung on cycle vertex v
    """
    pairs = cycle_pairs(list(range(g)))
    nxt = g
    for vertex, count in sorted(leaves.items()):
        for _ in range(count):
            pairs.append((vertex, nxt))
            nxt += 1
    graph = GainGraph.from_underlying(nxt, pairs)
    return with_cycle_gain(graph, list(range(g)), cycle_gain)


def cycle_joined_star(g: int, leaves: int, cycle_type: CycleType) -> GainGraph:
    """
    cycle 0..g-1 of the given type, joined by the edge 0-g to the center g of a star with `leaves` leaves
    """
    pairs = cycle_pairs(list(range(g))) + [(0, g)] + [(g, g + 1 + i) for i in range(leaves)]
    graph = GainGraph.from_underlying(g + 1 + leaves, pairs)
    return with_cycle_gain(graph, list(range(g)), type_gain(g, cycle_type))


def random_gains(n: int, pairs: Sequence[Edge], rng: np.random.Generator,
                 gain_set: GainSet = GainSet.LIPSCHITZ) -> GainGraph:
    return GainGraph(n, {(u, v): random_gain(rng, gain_set) for u, v in pairs})


def random_switching(n: int, rng: np.random.Generator, gain_set: GainSet = GainSet.LIPSCHITZ) -> SwitchingFunction:
    return SwitchingFunction({v: random_gain(rng, gain_set) for v in range(n)})


def random_graph(n: int, rng: np.random.Generator, density: float = 0.4,
                 gain_set: GainSet = GainSet.LIPSCHITZ) -> GainGraph:
    pairs = [pair for pair in combinations(range(n), 2) if rng.random() < density]
    return random_gains(n, pairs, rng, gain_set)


def random_hermitian(n: int, rng: np.random.Generator) -> List[List[Quaternion]]:
    """
    Hermitian n x n grid with Lipschitz off-diagonal entries, some zeroed, and real diagonal
    """
    entries = [[ONE * 0] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = ONE * int(rng.integers(-1, 2))
        for j in range(i + 1, n):
            q = random_gain(rng, GainSet.LIPSCHITZ) if rng.random() < 0.7 else ONE * 0
            entries[i][j] = q
            entries[j][i] = q.conj()
    return entries


def random_matrix(rows: int, cols: int, rng: np.random.Generator, density: float = 0.7) -> List[List[Quaternion]]:
    return [[random_gain(rng, GainSet.LIPSCHITZ) if rng.random() < density else ONE * 0 for _ in range(cols)]
            for _ in range(rows)]


# exhaustive corpus

def edge_slots(n: int) -> List[Edge]:
    return list(combinations(range(n), 2))


def mask_pairs(n: int, mask: int, slots: Optional[List[Edge]] = None) -> List[Edge]:
    slots = slots if slots is not None else edge_slots(n)
    return [slot for bit, slot in enumerate(slots) if mask >> bit & 1]


def mask_is_connected(n: int, mask: int, slots: List[Edge]) -> bool:
    adjacency = [0] * n
    for bit, (u, v) in enumerate(slots):
        if mask >> bit & 1:
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
    seen = frontier = 1
    while frontier:
        reach = 0
        f = frontier
        while f:
            low = f & -f
            reach |= adjacency[low.bit_length() - 1]
            f ^= low
        frontier = reach & ~seen
        seen |= reach
    return seen == (1 << n) - 1


def unit_count(n: int) -> int:
    total = 1 << len(edge_slots(n))
    return (total + UNIT_SIZE - 1) // UNIT_SIZE


def connected_graphs_in_unit(n: int, unit: int) -> Iterator[List[Edge]]:
    """
    connected labeled graphs on n vertices whose edge bitmask falls in work unit `unit`
    """
    slots = edge_slots(n)
    total = 1 << len(slots)
    for mask in range(unit * UNIT_SIZE, min((unit + 1) * UNIT_SIZE, total)):
        if mask_is_connected(n, mask, slots):
            yield mask_pairs(n, mask, slots)


def unit_rng(seed: int, n: int, unit: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, n, unit]))


def relabel(graph: GainGraph, mapping: Dict[int, int]) -> GainGraph:
    gains = {}
    for u, v, gain in graph.edges():
        a, b = mapping[u], mapping[v]
        gains[(a, b) if a < b else (b, a)] = gain if a < b else gain.conj()
    return GainGraph(graph.n, gains)


def attach_cycle(base: GainGraph, u: int, length: int, cycle_type: CycleType) -> GainGraph:
    """
    glues a cycle of the given length and type onto `base`, sharing only vertex u.
    the new cycle vertices follow the base vertices
    """
    n = base.n + length - 1
    cycle = [u] + list(range(base.n, n))
    exact = base.tower == Tower.EXACT
    gains = {(a, b): g for a, b, g in base.edges()}
    for a, b in cycle_pairs(cycle):
        gains.setdefault((min(a, b), max(a, b)), ONE if exact else ONE.to_float())
    gain = type_gain(length, cycle_type)
    return with_cycle_gain(GainGraph(n, gains), cycle, gain if exact else gain.to_float())


def random_connected_graph(n: int, rng: np.random.Generator, density: float = 0.5,
                           gain_set: GainSet = GainSet.LIPSCHITZ) -> GainGraph:
    """
    a random spanning tree plus random extra edges
    """
    pairs = set()
    order = [int(v) for v in rng.permutation(n)]
    for i in range(1, n):
        parent = order[int(rng.integers(i))]
        pairs.add((min(parent, order[i]), max(parent, order[i])))
    pairs.update(pair for pair in combinations(range(n), 2) if pair not in pairs and rng.random() < density)
    return random_gains(n, sorted(pairs), rng, gain_set)
