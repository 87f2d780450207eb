import json

import pytest
from pandas import DataFrame

from gainrank.app_config import AppConfig, RunConfig
from gainrank.report_generators.html_generator import HTMLReportGenerator
from gainrank.report_generators.json_generator import JSONReportGenerator, to_jsonable
from gainrank.report_generators.text_generator import TextReportGenerator
from gainrank.results import DataContainer
from gainrank.utils import data_utils
from gainrank.utils.consts import Command, CycleType, OutputFormat, ReportItemGroup


@pytest.fixture
def verify_config(tmp_path):
    return RunConfig(Command.VERIFY, AppConfig(str(tmp_path / 'missing.json')), output=OutputFormat.HTML)


@pytest.fixture
def summary():
    return DataFrame([{'suite': 'formulas', 'check': 'path-rank', 'passed': 12, 'failed': 0},
                      {'suite': 'tables', 'check': 'template:theta-1-1-1', 'passed': 3, 'failed': 1}],
                     columns=['suite', 'check', 'passed', 'failed'])


@pytest.fixture
def verify_container(summary):
    container = DataContainer()
    container.add('status', 'fail', ReportItemGroup.SUMMARY)
    container.add('pass_rate', data_utils.calc_percentage(15, 16), ReportItemGroup.SUMMARY)
    container.add('unmatched', 0, ReportItemGroup.SUMMARY)
    container.add('summary', summary, ReportItemGroup.SUITE)
    container.add('witnesses', [{'suite': 'tables', 'check': 'template:theta-1-1-1', 'detail': 'rank 3',
                                 'file': 'witnesses/witness-0123.qgg'}])
    return container


def test_calc_percentage():
    assert data_utils.calc_percentage(1, 4) == '25.0%'
    assert data_utils.calc_percentage(2, 3) == '66.7%'
    assert data_utils.calc_percentage(0, 0) == '0%'


def test_one_based():
    assert data_utils.one_based([0, 3, 1]) == [1, 4, 2]
    assert data_utils.one_based(iter(())) == []


def test_to_jsonable(summary):
    value = {1: CycleType.TYPE4, 'rows': summary, 'pair': (0, 1)}
    assert to_jsonable(value) == {'1': 4, 'pair': [0, 1],
                                  'rows': [{'suite': 'formulas', 'check': 'path-rank', 'passed': 12, 'failed': 0},
                                           {'suite': 'tables', 'check': 'template:theta-1-1-1', 'passed': 3,
                                            'failed': 1}]}


def test_json_report_sorted(verify_config, verify_container):
    report = JSONReportGenerator(verify_container, verify_config).generate({'report_title': 'T'})
    keys = list(json.loads(report))
    assert keys == sorted(keys)
    assert json.loads(report)['pass_rate'] == '93.8%'
    assert report.endswith('\n')


def test_text_report(verify_config):
    container = DataContainer()
    container.add('rank', 2)
    container.add('tolerance', None)
    container.add('cycle', [1, 2, 3])
    container.add('ranks', {'elim': 2, 'adjoint': 2})
    lines = TextReportGenerator(container, verify_config).generate().splitlines()
    assert lines == ['rank: 2', 'tolerance: -', 'cycle: 1 2 3', 'ranks:', '  elim: 2', '  adjoint: 2']


def test_text_report_frames(verify_config, verify_container):
    text = TextReportGenerator(verify_container, verify_config).generate({'report_title': 'T'})
    lines = text.splitlines()
    assert lines[0] == 'report_title: T'
    assert 'status: fail' in lines
    assert 'summary:' in lines
    assert any('path-rank' in line for line in lines)
    assert any(line.startswith('  - suite=tables, check=template:theta-1-1-1') for line in lines)


def test_html_report(verify_config, verify_container):
    html = HTMLReportGenerator(verify_container, verify_config).generate({'report_title': 'Rank Run'})
    assert '<title>Rank Run</title>' in html
    assert '<span class="fail">fail</span>' in html
    assert 'witnesses/witness-0123.qgg' in html
    assert 'no falsifications' not in html
    assert html.count('plotly') > 0


def test_html_report_needs_check_column():
    with pytest.raises(Exception):
        HTMLReportGenerator.create_item_definition_from_df(DataFrame({'suite': ['formulas']}), 'formulas', None)
