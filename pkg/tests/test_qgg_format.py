import pytest

from gainrank.algebra.quat import Quaternion, ONE, I, J
from gainrank.exceptions import GraphFormatException, NonUnitGainException
from gainrank.graphs.qgg_format import emit_qgg, parse_qgg, read_qgg, write_qgg
from gainrank.utils.consts import Tower


def test_read_sample(sample_graph):
    graph = read_qgg(sample_graph('k32.qgg'))
    assert graph.n == 5
    assert graph.edge_count == 6
    assert graph.gain(0, 3) == I
    assert graph.rank().rank == 2


def test_file_orientation_is_kept():
    graph = parse_qgg('#qgg v1\nn 2\ne 2 1 0 1 0 0\n')
    assert graph.gain(1, 0) == I
    assert graph.gain(0, 1) == -I


def test_comments_and_rationals():
    text = '#qgg v1\n# a comment\nn 3   # three vertices\n\ne 1 2 1/2 1/2 1/2 1/2\ne 2 3 0 0 1 0 # j\n'
    graph = parse_qgg(text)
    assert graph.gain(0, 1) == Quaternion.exact(1, 1, 1, 1) / 2
    assert graph.gain(1, 2) == J


def test_float_tower():
    graph = parse_qgg('n 2\ne 1 2 0 1 0 0\n', tower=Tower.FLOAT)
    assert graph.tower == Tower.FLOAT


def test_emit_then_parse(k32):
    text = emit_qgg(k32, ['K_{3,2}'])
    assert text.startswith('#qgg v1\n# K_{3,2}\nn 5\n')
    assert 'e 1 4 0 1 0 0' in text
    assert parse_qgg(text) == k32


def test_write_and_read(tmp_path, theta_111):
    path = str(tmp_path / 'theta.qgg')
    write_qgg(path, theta_111)
    assert read_qgg(path) == theta_111


@pytest.mark.parametrize('text, line', [
    ('#qgg v2\nn 2\n', 1),
    ('e 1 2 1 0 0 0\nn 2\n', 1),
    ('n 2\nn 3\n', 2),
    ('n two\n', 1),
    ('n 2\ne 1 1 1 0 0 0\n', 2),
    ('n 2\ne 1 3 1 0 0 0\n', 2),
    ('n 3\ne 1 2 1 0 0 0\ne 2 1 1 0 0 0\n', 3),
    ('n 2\ne 1 2 1 0 0\n', 2),
    ('n 2\ne 1 2\n', 2),
    ('n 2\ne 1 2 1 0 0 x\n', 2),
    ('n 2\nv 1\n', 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatException) as e:
        parse_qgg(text)
    assert e.value.line_number == line
    assert str(e.value).startswith(f'line {line}:')


def test_missing_vertex_count():
    with pytest.raises(GraphFormatException):
        parse_qgg('#qgg v1\n# nothing here\n')


def test_non_unit_gain():
    with pytest.raises(NonUnitGainException):
        parse_qgg('n 2\ne 1 2 1 1 0 0\n')
    with pytest.raises(NonUnitGainException):
        parse_qgg('n 2\ne 1 2 1 1 0 0\n', tower=Tower.FLOAT)
    graph = parse_qgg('n 2\ne 1 2 1 1 0 0\n', tower=Tower.FLOAT, normalize_gains=True)
    assert graph.gain(0, 1).is_unit()


def test_bare_edges_for_underlying_graphs(sample_graph):
    graph = read_qgg(sample_graph('k4_underlying.qgg'), require_gains=False)
    assert graph.n == 4 and graph.edge_count == 6
    assert all(gain == ONE for _, _, gain in graph.edges())
