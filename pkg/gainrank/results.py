from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from pandas import DataFrame

from gainrank.exceptions import FalsificationException
from gainrank.graphs.gain_graph import GainGraph
from gainrank.utils.consts import ReportItemGroup


class DataItem:
    def __init__(self, name, value, group: ReportItemGroup = None):
        self.name = name
        self.value = value
        self.group = group


class DataContainer:
    """
    holds report items (values, dataframes, graphs) by name
    """

    def __init__(self):
        self.data_items: Dict[str, DataItem] = {}

    def add(self, name: str, value, group: ReportItemGroup = None):
        self.data_items[name] = DataItem(name, value, group)

    def get(self, item_name: str) -> DataItem:
        return self.data_items[item_name]

    def get_value(self, item_name: str, default=None):
        item = self.data_items.get(item_name)
        return item.value if item else default

    def to_dict(self) -> Dict:
        return {name: item.value for name, item in self.data_items.items()}


@dataclass
class Tally:
    passed: int = 0
    failed: int = 0

    def add(self, other: 'Tally'):
        self.passed += other.passed
        self.failed += other.failed


@dataclass
class Witness:
    suite: str
    check: str
    detail: str
    graph: Optional[GainGraph] = None
    # set once the graph is written
    file: Optional[str] = None

    def to_dict(self) -> Dict:
        return {'suite': self.suite, 'check': self.check, 'detail': self.detail, 'file': self.file}


@dataclass
class Unmatched:
    """
    a graph the theory leaves open, recorded as data
    """
    suite: str
    check: str
    graph: Optional[GainGraph]


@dataclass
class VerificationResults:
    tallies: Dict[str, Dict[str, Tally]] = field(default_factory=dict)
    witnesses: List[Witness] = field(default_factory=list)
    unmatched: List[Unmatched] = field(default_factory=list)
    # informational findings, neither passes nor failures
    notes: List[Witness] = field(default_factory=list)

    def _tally(self, suite: str, check: str) -> Tally:
        return self.tallies.setdefault(suite, {}).setdefault(check, Tally())

    def record_pass(self, suite: str, check: str):
        self._tally(suite, check).passed += 1

    def record_failure(self, suite: str, error: FalsificationException, check: Optional[str] = None):
        check = check or error.check
        detail = error.detail if check == error.check else str(error)
        self._tally(suite, check).failed += 1
        self.witnesses.append(Witness(suite, check, detail, error.graph))

    def record_unmatched(self, suite: str, check: str, graph: Optional[GainGraph]):
        self.unmatched.append(Unmatched(suite, check, graph))

    def record_note(self, suite: str, check: str, detail: str, graph: Optional[GainGraph] = None):
        self.notes.append(Witness(suite, check, detail, graph))

    def merge(self, other: 'VerificationResults'):
        for suite, checks in other.tallies.items():
            for check, tally in checks.items():
                self._tally(suite, check).add(tally)
        self.witnesses.extend(other.witnesses)
        self.unmatched.extend(other.unmatched)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def total(self) -> Tally:
        total = Tally()
        for checks in self.tallies.values():
            for tally in checks.values():
                total.add(tally)
        return total

    def summary_frame(self, suite: Optional[str] = None) -> DataFrame:
        rows = [{'suite': s, 'check': c, 'passed': t.passed, 'failed': t.failed}
                for s, checks in sorted(self.tallies.items()) if suite in (None, s)
                for c, t in sorted(checks.items())]
        return DataFrame(rows, columns=['suite', 'check', 'passed', 'failed'])

    def to_dict(self) -> Dict[str, Union[str, Dict, List]]:
        return {'status': 'pass' if self.passed else 'fail',
                'suites': {s: {c: {'passed': t.passed, 'failed': t.failed} for c, t in sorted(checks.items())}
                           for s, checks in sorted(self.tallies.items())},
                'witnesses': [w.to_dict() for w in self.witnesses],
                'unmatched': len(self.unmatched),
                'notes': [n.to_dict() for n in self.notes]}
