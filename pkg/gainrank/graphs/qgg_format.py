import logging
from typing import Iterable, Optional

from gainrank.algebra.quat import ONE, parse_quaternion, format_quaternion, ensure_unit
from gainrank.exceptions import GraphFormatException
from gainrank.graphs.gain_graph import GainGraph
from gainrank.utils.consts import Tower, QGG_HEADER

logger = logging.getLogger(__name__)


def parse_qgg(text: str, tower: Tower = Tower.EXACT, normalize_gains: bool = False,
              require_gains: bool = True) -> GainGraph:
    """
    parses the qgg v1 text format
    :param text:
    :param tower: coefficient tower of the parsed gains
    :param normalize_gains: float tower only - rescale non-unit gains with a warning instead of failing
    :param require_gains: False accepts bare `e u v` lines (gain 1), used for underlying-graph edge lists
    :return:
    """
    n: Optional[int] = None
    gains = {}

    for line_number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith('#qgg') and stripped != QGG_HEADER:
            raise GraphFormatException(f'unsupported header {stripped!r}', line_number)

        tokens = raw.split('#', 1)[0].split()
        if not tokens:
            continue

        directive = tokens[0]
        if directive == 'n':
            if n is not None:
                raise GraphFormatException('vertex count given twice', line_number)
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise GraphFormatException(f'expected "n <count>", got {stripped!r}', line_number)
            n = int(tokens[1])
        elif directive == 'e':
            if n is None:
                raise GraphFormatException('edge before vertex count', line_number)
            if len(tokens) not in (3, 7) or (len(tokens) == 3 and require_gains):
                raise GraphFormatException(f'expected "e <u> <v> <x0> <x1> <x2> <x3>", got {stripped!r}',
                                           line_number)
            try:
                u, v = int(tokens[1]) - 1, int(tokens[2]) - 1
            except ValueError:
                raise GraphFormatException(f'invalid vertex in {stripped!r}', line_number)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatException(f'vertex out of range 1..{n} in {stripped!r}', line_number)
            if u == v:
                raise GraphFormatException(f'loop at vertex {u + 1}', line_number)
            key = (min(u, v), max(u, v))
            if key in gains:
                raise GraphFormatException(f'duplicate edge {key[0] + 1}-{key[1] + 1}', line_number)

            if len(tokens) == 3:
                gain = ONE if tower == Tower.EXACT else ONE.to_float()
            else:
                try:
                    gain = parse_quaternion(tokens[3:], tower)
                except ValueError as e:
                    raise GraphFormatException(str(e), line_number)
                gain = ensure_unit(gain, normalize=normalize_gains)
            # file orientation wins; storage is min -> max
            gains[key] = gain if u < v else gain.conj()
        else:
            raise GraphFormatException(f'unknown directive {directive!r}', line_number)

    if n is None:
        raise GraphFormatException('missing "n <count>" line')

    graph = GainGraph(n, gains, validate=False)
    logger.debug(f'parsed {graph}')
    return graph


def emit_qgg(graph: GainGraph, comments: Iterable[str] = ()) -> str:
    lines = [QGG_HEADER]
    lines += [f'# {c}' for c in comments]
    lines.append(f'n {graph.n}')
    for u, v, gain in graph.edges():
        lines.append(f'e {u + 1} {v + 1} {format_quaternion(gain)}')
    return '\n'.join(lines) + '\n'


def read_qgg(path: str, **kwargs) -> GainGraph:
    logger.info(f'reading graph file {path}')
    with open(path, 'r') as f:
        return parse_qgg(f.read(), **kwargs)


def write_qgg(path: str, graph: GainGraph, comments: Iterable[str] = ()):
    logger.info(f'writing graph file {path}')
    with open(path, 'w') as f:
        f.write(emit_qgg(graph, comments))
