import os
from enum import unique, Enum
from os import environ

# env variables
LOGGING_LEVEL = environ.get("LOGGING_LEVEL", 'INFO')
CONFIGURATION_FILE = environ.get("CONFIGURATION_FILE", 'configuration.json')
QGG_THREADS = int(environ.get("QGG_THREADS", os.cpu_count() or 1))

DEFAULT_TOLERANCE = 1e-9
UNIT_TOLERANCE = 1e-12
# float-tower type decisions outside [TYPE_ZERO_TOLERANCE, TYPE_NONZERO_THRESHOLD] only
TYPE_ZERO_TOLERANCE = 1e-9
TYPE_NONZERO_THRESHOLD = 1e-6

QGG_HEADER = '#qgg v1'


@unique
class Tower(Enum):
    EXACT = 'exact'
    FLOAT = 'float'


@unique
class RankMethod(Enum):
    ELIMINATION = 'elim'
    ADJOINT = 'adjoint'
    BOTH = 'both'


@unique
class GainSet(Enum):
    LIPSCHITZ = 'lipschitz'
    UNIFORM = 'uniform'


@unique
class OutputFormat(Enum):
    TEXT = 'text'
    JSON = 'json'
    HTML = 'html'


@unique
class Command(Enum):
    RANK = 'rank'
    GIRTH = 'girth'
    CLASSIFY = 'classify'
    REDUCE = 'reduce'
    RANDOM = 'random'
    VERIFY = 'verify'


@unique
class Suite(Enum):
    FORMULAS = 'formulas'
    GIRTH_BOUND = 'girth-bound'
    TABLES = 'tables'
    CLASSIFICATIONS = 'classifications'
    REDUCTIONS = 'reductions'
    ALL = 'all'


@unique
class CycleType(Enum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3
    TYPE4 = 4

    @property
    def even(self) -> bool:
        return self in (CycleType.TYPE1, CycleType.TYPE2)


@unique
class Relation(Enum):
    BELOW = 'rank < g-2'
    G_MINUS_2 = 'g-2'
    G_MINUS_1 = 'g-1'
    EQUAL = 'g'
    ABOVE = 'rank > g'
    ACYCLIC = 'acyclic'


@unique
class Family(Enum):
    PATH = 'Path'
    STAR = 'Star'
    CYCLE = 'Cycle'
    COMPLETE = 'Complete'
    COMPLETE_BIPARTITE = 'CompleteBipartite'
    COMPLETE_TRIPARTITE = 'CompleteTripartite'
    CANONICAL_UNICYCLIC = 'CanonicalUnicyclic'
    INFINITY = 'Infinity'
    THETA = 'Theta'
    OTHER = 'Other'


# lowest priority first
FAMILY_PRECEDENCE = [Family.PATH, Family.STAR, Family.CYCLE, Family.COMPLETE, Family.COMPLETE_BIPARTITE,
                     Family.COMPLETE_TRIPARTITE, Family.CANONICAL_UNICYCLIC, Family.INFINITY, Family.THETA]


@unique
class ReportItemName(Enum):
    REPORT_TITLE = "report_title"
    STATUS = "status"
    CONFIG = "config"
    SUMMARY = "summary"
    WITNESSES = "witnesses"
    NOTES = "notes"
    UNMATCHED = "unmatched"
    PASS_RATE = "pass_rate"


@unique
class ItemType(Enum):
    BAR = 'bar'
    STACK = 'stack'
    VALUE = 'value'


@unique
class ReportItemGroup(Enum):
    SUMMARY = 'summary'
    SUITE = 'suite'
    QUERY = 'query'
