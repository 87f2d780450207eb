import json
import logging
from typing import Dict, List, Optional

from gainrank.utils.consts import (CONFIGURATION_FILE, QGG_THREADS, DEFAULT_TOLERANCE, Command, GainSet, OutputFormat,
                                   RankMethod, Suite, Tower)

MAX_N_DEFAULT = 6
SAMPLES_DEFAULT = 10
SEED_DEFAULT = 1
MATRIX_SAMPLES_DEFAULT = 200
K4_SAMPLES_DEFAULT = 500
RANDOM_GRAPHS_DEFAULT = 100
SWITCHINGS_DEFAULT = 50
CANONICAL_INSTANCES_DEFAULT = 50
MAX_FORMULA_N_DEFAULT = 12

TEMPLATE_NAME_DEFAULT = "verification.html"
REPORT_TITLE_DEFAULT = "Gain Graph Rank Verification"
WITNESS_DIRECTORY_DEFAULT = "witnesses"

logger = logging.getLogger(__name__)


class ConfigurationException(Exception):
    pass


def _positive_int(name: str, value, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigurationException(f'{name} should be an integer >= {minimum}, got {value!r}')
    return value


def _enum_value(enum_cls, name: str, value):
    try:
        return enum_cls(value)
    except ValueError:
        valid = [i.value for i in enum_cls]
        raise ConfigurationException(f'unknown {name}: {value!r}, expected one of {valid}')


class VerificationConfig:
    """
    sampling sizes of the verification suites
    """

    def __init__(self):
        self._max_n = MAX_N_DEFAULT
        self._samples = SAMPLES_DEFAULT
        self._seed = SEED_DEFAULT
        self._gain_set = GainSet.LIPSCHITZ
        self._tol = DEFAULT_TOLERANCE
        self.matrix_samples = MATRIX_SAMPLES_DEFAULT
        self.k4_samples = K4_SAMPLES_DEFAULT
        self.random_graphs = RANDOM_GRAPHS_DEFAULT
        self.switchings = SWITCHINGS_DEFAULT
        self.canonical_instances = CANONICAL_INSTANCES_DEFAULT
        self.max_formula_n = MAX_FORMULA_N_DEFAULT
        self.threads = QGG_THREADS

    @property
    def max_n(self) -> int:
        return self._max_n

    @max_n.setter
    def max_n(self, val):
        self._max_n = _positive_int('max_n', val, 2)

    @property
    def samples(self) -> int:
        return self._samples

    @samples.setter
    def samples(self, val):
        self._samples = _positive_int('samples', val)

    @property
    def seed(self) -> int:
        return self._seed

    @seed.setter
    def seed(self, val):
        if isinstance(val, bool) or not isinstance(val, int) or not 0 <= val < 2 ** 64:
            raise ConfigurationException(f'seed should be a 64-bit unsigned integer, got {val!r}')
        self._seed = val

    @property
    def gain_set(self) -> GainSet:
        return self._gain_set

    @gain_set.setter
    def gain_set(self, val):
        self._gain_set = val if isinstance(val, GainSet) else _enum_value(GainSet, 'gain set', val)

    @property
    def tol(self) -> float:
        return self._tol

    @tol.setter
    def tol(self, val):
        if isinstance(val, bool) or not isinstance(val, (int, float)) or not 0 < val < 1:
            raise ConfigurationException(f'tol should be a number in (0, 1), got {val!r}')
        self._tol = float(val)

    def load(self, cfg: Dict):
        for key in ('max_n', 'samples', 'seed', 'gain_set', 'tol'):
            if cfg.get(key) is not None:
                setattr(self, key, cfg[key])
        for key in ('matrix_samples', 'k4_samples', 'random_graphs', 'switchings', 'canonical_instances'):
            if cfg.get(key) is not None:
                setattr(self, key, _positive_int(key, cfg[key]))
        if cfg.get('max_formula_n') is not None:
            self.max_formula_n = _positive_int('max_formula_n', cfg['max_formula_n'], 3)
        unknown = set(cfg) - {'max_n', 'samples', 'seed', 'gain_set', 'tol', 'matrix_samples', 'k4_samples',
                              'random_graphs', 'switchings', 'canonical_instances', 'max_formula_n'}
        if unknown:
            raise ConfigurationException(f'unknown verification settings: {sorted(unknown)}')

    def to_dict(self) -> Dict:
        return {'max_n': self.max_n, 'samples': self.samples, 'seed': self.seed, 'gain_set': self.gain_set.value,
                'tol': self.tol, 'matrix_samples': self.matrix_samples, 'k4_samples': self.k4_samples,
                'random_graphs': self.random_graphs, 'switchings': self.switchings,
                'canonical_instances': self.canonical_instances, 'max_formula_n': self.max_formula_n}


class AppConfig:
    def __init__(self, config_file: str = CONFIGURATION_FILE):
        cfg = self._load_config(config_file)
        logger.debug(f'Loaded config:{cfg}')
        self.report_title = REPORT_TITLE_DEFAULT if not cfg.get('report_title') else cfg['report_title']
        self.witness_directory = WITNESS_DIRECTORY_DEFAULT if not cfg.get('witness_directory') \
            else cfg['witness_directory']
        self.template_name = self._load_reports_config(cfg.get('reports'))

        self.verification = VerificationConfig()
        if cfg.get('verification'):
            self.verification.load(cfg['verification'])

    @staticmethod
    def _load_reports_config(reports_cfg) -> str:
        if not reports_cfg:
            return TEMPLATE_NAME_DEFAULT

        valid_reports = [i.value for i in OutputFormat]
        for k in reports_cfg:
            if k not in valid_reports:
                raise ConfigurationException(f'unknown report type:{k}')
        return reports_cfg.get(OutputFormat.HTML.value, {}).get('template_name', TEMPLATE_NAME_DEFAULT)

    @staticmethod
    def _load_config(config_file: str) -> Dict:
        logger.debug(f'loading configuration from {config_file}')
        try:
            with open(config_file, 'r') as c:
                return json.loads(c.read())
        except FileNotFoundError:
            logger.info("configuration file was not found. running with defaults")
            return {}
        except json.JSONDecodeError as e:
            raise ConfigurationException(f'error loading configuration file {config_file}: {e}')


class RunConfig:
    """
    one command invocation: command line flags merged over the configuration file
    """

    def __init__(self, command: Command, app_config: AppConfig, inputs: Optional[List[str]] = None,
                 method: RankMethod = RankMethod.ELIMINATION, tower: Tower = Tower.EXACT,
                 output: OutputFormat = OutputFormat.TEXT, output_path: Optional[str] = None,
                 suite: Suite = Suite.ALL):
        self.command = command
        self.app_config = app_config
        self.inputs = inputs or []
        self.method = method
        self.tower = tower
        self.output = output
        self.output_path = output_path
        self.suite = suite
        self.verification = app_config.verification

        if self.verification.gain_set == GainSet.UNIFORM and self.tower == Tower.EXACT:
            logger.warning('uniform gains are not exact; switching to the float tower')
            self.tower = Tower.FLOAT
        if self.output == OutputFormat.HTML and self.command != Command.VERIFY:
            raise ConfigurationException(f'html output is only available for {Command.VERIFY.value}')

    @property
    def tol(self) -> float:
        return self.verification.tol

    @property
    def seed(self) -> int:
        return self.verification.seed

    @property
    def gain_set(self) -> GainSet:
        return self.verification.gain_set

    @property
    def suites(self) -> List[Suite]:
        if self.suite == Suite.ALL:
            return [s for s in Suite if s != Suite.ALL]
        return [self.suite]

    def to_dict(self) -> Dict:
        return {'command': self.command.value, 'inputs': list(self.inputs), 'method': self.method.value,
                'tower': self.tower.value, 'output': self.output.value, 'suite': self.suite.value,
                'verification': self.verification.to_dict()}
