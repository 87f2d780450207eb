import logging
from dataclasses import dataclass
from typing import Union

from gainrank.exceptions import ParityMismatchException, WrongFamilyException
from gainrank.graphs.gain_graph import GainGraph
from gainrank.graphs.reduce import bicyclic_core, recognize
from gainrank.utils.consts import CycleType, Family

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RankInterval:
    low: int
    high: int

    def contains(self, rank: int) -> bool:
        return self.low <= rank <= self.high

    def __str__(self):
        return f'[{self.low}, {self.high}]'


def path_rank(n: int) -> int:
    if n < 1:
        raise ValueError(f'a path needs at least one vertex, got {n}')
    return n - 1 if n % 2 else n


def _check_parity(n: int, cycle_type: CycleType):
    if n < 3:
        raise ValueError(f'a cycle needs at least three vertices, got {n}')
    if cycle_type.even != (n % 2 == 0):
        raise ParityMismatchException(f'{cycle_type.name} cannot occur on a cycle of length {n}')


def cycle_rank(n: int, cycle_type: CycleType) -> int:
    _check_parity(n, cycle_type)
    if cycle_type == CycleType.TYPE1:
        return n - 2
    if cycle_type == CycleType.TYPE4:
        return n - 1
    return n


def cycle_attachment_rank(n: int, cycle_type: CycleType, r_g1: int, r_g2: int) -> Union[int, RankInterval]:
    """
    rank of a cycle glued at one vertex u onto a graph G1.
    :param n: cycle length
    :param cycle_type:
    :param r_g1: rank of G1
    :param r_g2: rank of G1 - u
    :return: exact rank, or an interval for Type3 cycles
    """
    _check_parity(n, cycle_type)
    if cycle_type == CycleType.TYPE1:
        return n - 2 + r_g1
    if cycle_type == CycleType.TYPE2:
        return n + r_g2
    if cycle_type == CycleType.TYPE4:
        return n - 1 + r_g1
    return RankInterval(n - 1 + r_g2, n + r_g1)


def bicyclic_lower_bound(graph: GainGraph) -> int:
    """
    sharp lower bound on the rank of a connected bicyclic graph with pendant vertices,
    read off the parities of its infinity / theta skeleton
    """
    core = bicyclic_core(graph)
    if not core.has_pendants:
        raise WrongFamilyException(f'{graph} has no pendant vertices')

    if core.shape.family == Family.INFINITY:
        p, _, q = core.shape.params
        if p % 2 and q % 2:
            return p + q
        if p % 2 == 0 and q % 2 == 0:
            return p + q - 2
        return p + q - 1

    p, l, q = core.shape.params
    if p == 0:
        return l + q + 1 if (l + q) % 2 else l + q + 2
    if p % 2 or l % 2 or q % 2:
        return p + l + q + 1
    return p + l + q + 2


def canonical_unicyclic_rank(graph: GainGraph) -> int:
    shape = recognize(graph).find(Family.CANONICAL_UNICYCLIC)
    if shape is None:
        raise WrongFamilyException(f'{graph} is not a canonical unicyclic graph')
    g, _, k = shape.params
    return g + k
