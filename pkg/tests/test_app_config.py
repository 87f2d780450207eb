import json
import pathlib

import pytest

from gainrank.app_config import AppConfig, ConfigurationException, RunConfig, VerificationConfig, MAX_N_DEFAULT
from gainrank.utils.consts import Command, GainSet, OutputFormat, Suite, Tower


def write_config(tmp_path, cfg) -> str:
    path = tmp_path / 'configuration.json'
    path.write_text(json.dumps(cfg))
    return str(path)


def test_defaults_without_file(tmp_path):
    config = AppConfig(str(tmp_path / 'missing.json'))
    assert config.verification.max_n == MAX_N_DEFAULT
    assert config.verification.gain_set == GainSet.LIPSCHITZ
    assert config.template_name == 'verification.html'
    assert config.witness_directory == 'witnesses'


def test_repository_configuration_loads():
    config = AppConfig(str(pathlib.Path(__file__).parent.parent / 'configuration.json'))
    assert config.report_title == 'Gain Graph Rank Verification'
    assert config.verification.seed == 1


def test_load_verification_section(tmp_path):
    config = AppConfig(write_config(tmp_path, {
        'report_title': 'nightly',
        'verification': {'max_n': 5, 'samples': 3, 'seed': 42, 'gain_set': 'uniform', 'tol': 1e-8, 'k4_samples': 7},
        'reports': {'html': {'template_name': 'custom.html'}},
    }))
    v = config.verification
    assert (v.max_n, v.samples, v.seed, v.gain_set, v.tol, v.k4_samples) == (5, 3, 42, GainSet.UNIFORM, 1e-8, 7)
    assert config.report_title == 'nightly'
    assert config.template_name == 'custom.html'


@pytest.mark.parametrize('cfg', [
    {'verification': {'max_n': 1}},
    {'verification': {'samples': 0}},
    {'verification': {'seed': -1}},
    {'verification': {'seed': 2 ** 64}},
    {'verification': {'gain_set': 'gaussian'}},
    {'verification': {'tol': 1.5}},
    {'verification': {'max_formula_n': 2}},
    {'verification': {'threads': 4}},
    {'reports': {'pdf': {}}},
])
def test_invalid_configuration(tmp_path, cfg):
    with pytest.raises(ConfigurationException):
        AppConfig(write_config(tmp_path, cfg))


def test_malformed_json(tmp_path):
    path = tmp_path / 'configuration.json'
    path.write_text('{"verification": ')
    with pytest.raises(ConfigurationException):
        AppConfig(str(path))


def test_verification_config_setters():
    v = VerificationConfig()
    v.gain_set = 'uniform'
    assert v.gain_set == GainSet.UNIFORM
    with pytest.raises(ConfigurationException):
        v.max_n = True
    assert 'threads' not in v.to_dict()


def test_run_config(tmp_path):
    app_config = AppConfig(str(tmp_path / 'missing.json'))
    config = RunConfig(Command.VERIFY, app_config, suite=Suite.ALL)
    assert Suite.ALL not in config.suites
    assert len(config.suites) == 5
    assert RunConfig(Command.VERIFY, app_config, suite=Suite.TABLES).suites == [Suite.TABLES]
    assert config.to_dict()['verification']['seed'] == 1


def test_uniform_gains_switch_to_float(tmp_path):
    app_config = AppConfig(str(tmp_path / 'missing.json'))
    app_config.verification.gain_set = GainSet.UNIFORM
    assert RunConfig(Command.RANDOM, app_config, ['g.qgg']).tower == Tower.FLOAT


def test_html_only_for_verify(tmp_path):
    app_config = AppConfig(str(tmp_path / 'missing.json'))
    with pytest.raises(ConfigurationException):
        RunConfig(Command.RANK, app_config, ['g.qgg'], output=OutputFormat.HTML)
