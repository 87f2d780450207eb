import json

import pytest

from gainrank import app_config
from gainrank.cli import main
from gainrank.exceptions import FalsificationException
from gainrank.graphs import generators
from gainrank.verification import checks

SMALL_VERIFICATION = {'max_n': 4, 'samples': 2, 'matrix_samples': 5, 'k4_samples': 3, 'random_graphs': 5,
                      'switchings': 1, 'canonical_instances': 4, 'max_formula_n': 6}


@pytest.fixture
def config_file(tmp_path, monkeypatch):
    monkeypatch.setattr(app_config, 'QGG_THREADS', 1)
    path = tmp_path / 'configuration.json'
    path.write_text(json.dumps({'verification': SMALL_VERIFICATION}))
    return str(path)


def run(argv, config_file, capsys):
    code = main(argv, config_file=config_file)
    return code, capsys.readouterr().out


def test_rank(sample_graph, config_file, capsys):
    code, out = run(['rank', sample_graph('k32.qgg')], config_file, capsys)
    assert code == 0
    assert 'rank: 2' in out.splitlines()


def test_rank_both_methods_json(sample_graph, config_file, capsys):
    code, out = run(['rank', sample_graph('theta_1_1_1.qgg'), '--method', 'both', '--output', 'json'],
                    config_file, capsys)
    report = json.loads(out)
    assert code == 0
    assert report['rank'] == 4
    assert report['ranks'] == {'elim': 4, 'adjoint': 4}
    assert report['agrees'] is True


def test_rank_float_tower(sample_graph, config_file, capsys):
    code, out = run(['rank', sample_graph('c7.qgg'), '--tower', 'float', '--output', 'json'], config_file, capsys)
    assert code == 0
    assert json.loads(out)['rank'] == 6
    assert json.loads(out)['tower'] == 'float'


def test_girth(sample_graph, config_file, capsys):
    code, out = run(['girth', sample_graph('c7.qgg'), '--output', 'json'], config_file, capsys)
    report = json.loads(out)
    assert code == 0
    assert report['girth'] == 7
    assert sorted(report['cycle']) == [1, 2, 3, 4, 5, 6, 7]
    assert report['cycle_type'] == 4
    assert report['approximate'] is False and report['ambiguous'] is False


def test_classify(sample_graph, config_file, capsys):
    code, out = run(['classify', sample_graph('reducible_triangle.qgg'), '--output', 'json'], config_file, capsys)
    report = json.loads(out)
    assert code == 0
    assert (report['girth'], report['rank'], report['relation']) == (3, 2, 'g-1')
    assert report['case'] == 'Thm 5.1(b)'
    assert report['case_id'] == 'rank-g-1:reduced-triangle-type4'
    assert 'Thm 4.10(b)' in report['cases']
    assert report['approximate'] is False


@pytest.mark.parametrize('name, relation, case', [
    ('k32.qgg', 'g-2', 'Thm 3.2(b)'),
    ('c4_ones.qgg', 'g-2', 'Thm 3.2(a)'),
    ('c7.qgg', 'g-1', 'Thm 5.1(a)'),
])
def test_classify_labels(name, relation, case, sample_graph, config_file, capsys):
    code, out = run(['classify', sample_graph(name), '--output', 'json'], config_file, capsys)
    report = json.loads(out)
    assert code == 0
    assert (report['relation'], report['case']) == (relation, case)


def test_classify_ambiguous_float_cycle(tmp_path, config_file, capsys):
    path = tmp_path / 'nearly_type4.qgg'
    path.write_text('#qgg v1\nn 3\ne 1 2 1 0 0 0\ne 2 3 1 0 0 0\ne 3 1 1e-7 0.999999999999995 0 0\n')
    code, out = run(['classify', str(path), '--tower', 'float', '--output', 'json'], config_file, capsys)
    assert code == 2
    assert out == ''


def test_classify_disconnected(tmp_path, config_file, capsys):
    path = tmp_path / 'two.qgg'
    path.write_text('#qgg v1\nn 3\ne 1 2 1 0 0 0\n')
    code, _ = run(['classify', str(path)], config_file, capsys)
    assert code == 2


def test_reduce(sample_graph, config_file, capsys):
    code, out = run(['reduce', sample_graph('reducible_triangle.qgg')], config_file, capsys)
    assert code == 0
    assert out.startswith('#qgg v1\n')
    assert '# removed: 3' in out
    assert 'n 3' in out.splitlines()


def test_reduce_to_file(tmp_path, sample_graph, config_file, capsys):
    target = tmp_path / 'reduced.qgg'
    code, out = run(['reduce', sample_graph('k32.qgg'), '-o', str(target)], config_file, capsys)
    assert code == 0
    assert 'reduced_n: 2' in out.splitlines()
    assert 'n 2' in target.read_text().splitlines()


def test_random_is_seeded(sample_graph, config_file, capsys):
    argv = ['random', sample_graph('k4_underlying.qgg'), '--seed', '7']
    first = run(argv, config_file, capsys)
    second = run(argv, config_file, capsys)
    assert first == second
    assert first[0] == 0
    assert '# seed: 7' in first[1]
    assert len([line for line in first[1].splitlines() if line.startswith('e ')]) == 6


def test_random_uniform(sample_graph, config_file, capsys):
    code, out = run(['random', sample_graph('k4_underlying.qgg'), '--gain-set', 'uniform'], config_file, capsys)
    assert code == 0
    assert '# gain set: uniform' in out


@pytest.mark.parametrize('argv', [
    ['rank', 'no-such-file.qgg'],
    ['rank', 'sample_graphs/k32.qgg', '--output', 'html'],
    ['verify', '--max-n', '1'],
    ['verify', '--tol', '2'],
])
def test_usage_errors(argv, config_file, capsys):
    assert run(argv, config_file, capsys)[0] == 2


def test_parse_error(tmp_path, config_file, capsys):
    path = tmp_path / 'bad.qgg'
    path.write_text('#qgg v1\nn 2\ne 1 2 1 1 0 0\n')
    assert run(['rank', str(path)], config_file, capsys)[0] == 2


def test_unknown_command(config_file):
    with pytest.raises(SystemExit) as e:
        main(['bogus'], config_file=config_file)
    assert e.value.code == 2


def test_verify_json(tmp_path, config_file, capsys):
    target = tmp_path / 'report.json'
    code, _ = run(['verify', '--suite', 'formulas', '--output', 'json', '-o', str(target)], config_file, capsys)
    report = json.loads(target.read_text())
    assert code == 0
    assert report['status'] == 'pass'
    assert report['pass_rate'] == '100.0%'
    assert {row['suite'] for row in report['summary']} == {'formulas'}
    assert report['config']['verification']['max_n'] == 4


def test_verify_all_text(tmp_path, config_file, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out = run(['verify'], config_file, capsys)
    assert code == 0
    assert 'status: pass' in out.splitlines()
    assert 'notes:' in out.splitlines()


def test_verify_keeps_k4_counterexample_as_note(tmp_path, config_file, capsys):
    target = tmp_path / 'report.json'
    code, _ = run(['verify', '--suite', 'classifications', '--output', 'json', '-o', str(target)],
                  config_file, capsys)
    report = json.loads(target.read_text())
    assert code == 0
    assert report['status'] == 'pass'
    assert report['witnesses'] == []
    assert [n['check'] for n in report['notes']] == ['k4-counterexample']
    assert 'k4-counterexample' not in {row['check'] for row in report['summary']}
    note_file = tmp_path / 'witnesses' / report['notes'][0]['file'].split('/')[-1]
    assert note_file.name.startswith('note-')
    assert '# check: k4-counterexample' in note_file.read_text()


def test_verify_html(tmp_path, config_file, capsys):
    target = tmp_path / 'report.html'
    code, _ = run(['verify', '--suite', 'reductions', '--output', 'html', '-o', str(target)], config_file, capsys)
    html = target.read_text()
    assert code == 0
    assert '<title>Gain Graph Rank Verification</title>' in html
    assert 'no falsifications' in html


def test_verify_falsification_writes_witness(tmp_path, config_file, capsys, monkeypatch):
    def falsified(graph, tol=None):
        raise FalsificationException('path-rank', 'forced', generators.path_graph(2))

    monkeypatch.setattr(checks, 'check_path_rank', falsified)
    target = tmp_path / 'report.json'
    code, _ = run(['verify', '--suite', 'formulas', '--output', 'json', '-o', str(target)], config_file, capsys)
    report = json.loads(target.read_text())
    assert code == 1
    assert report['status'] == 'fail'
    assert report['witnesses'][0]['check'] == 'path-rank'
    witness = tmp_path / 'witnesses'
    assert len(list(witness.iterdir())) == 1
