import logging
from abc import ABC, abstractmethod

import numpy as np

from gainrank.app_config import RunConfig
from gainrank.exceptions import DisconnectedGraphException
from gainrank.graphs import generators
from gainrank.graphs.gain_graph import GainGraph
from gainrank.graphs.qgg_format import read_qgg, emit_qgg, write_qgg
from gainrank.graphs.reduce import reduced_graph, trim_pendant_pairs
from gainrank.output_manager import OutputManager
from gainrank.report_generators.html_generator import HTMLReportGenerator
from gainrank.report_generators.json_generator import JSONReportGenerator
from gainrank.report_generators.text_generator import TextReportGenerator
from gainrank.results import DataContainer
from gainrank.theorems.classifiers import classify
from gainrank.utils import data_utils
from gainrank.utils.consts import Command, OutputFormat, RankMethod, ReportItemName, ReportItemGroup, Tower
from gainrank.verification.suites import SuiteRunner

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2

report_generators = {
    OutputFormat.TEXT.value: TextReportGenerator,
    OutputFormat.JSON.value: JSONReportGenerator,
    OutputFormat.HTML.value: HTMLReportGenerator,
}


class ExecutorBase(ABC):

    def __init__(self, config: RunConfig):
        self.config = config
        self.data_container = DataContainer()

    def _read_graph(self, **kwargs) -> GainGraph:
        if len(self.config.inputs) != 1:
            raise ValueError(f'{self.config.command.value} expects exactly one input file')
        kwargs.setdefault('tower', self.config.tower)
        return read_qgg(self.config.inputs[0], **kwargs)

    def _add(self, name: str, value):
        self.data_container.add(name, value, ReportItemGroup.QUERY)

    def _generate_report(self, additional_data_items=None) -> str:
        generator_cls = report_generators.get(self.config.output.value)
        if not generator_cls:
            raise Exception(f'unknown report name : {self.config.output.value}')
        return generator_cls(self.data_container, self.config).generate(additional_data_items)

    def _output_report(self, output_path=None):
        OutputManager(output_path).output(self._generate_report())

    def exec(self) -> int:
        logger.debug(f'executing {self.__class__.__name__} with {self.config.to_dict()}')
        return self._exec()

    @abstractmethod
    def _exec(self) -> int:
        raise NotImplementedError('_exec function should be implemented by subclasses')


class RankExecutor(ExecutorBase):

    def _exec(self) -> int:
        graph = self._read_graph()
        report = graph.rank(self.config.method, self.config.tol)
        self._add('n', graph.n)
        self._add('tower', graph.tower.value)
        for name, value in report.to_dict().items():
            if name == 'ranks' and self.config.method != RankMethod.BOTH:
                continue
            self._add(name, value)
        self._output_report(self.config.output_path)
        return EXIT_OK if report.agrees else EXIT_DISAGREEMENT


class GirthExecutor(ExecutorBase):

    def _exec(self) -> int:
        graph = self._read_graph()
        girth = graph.girth()
        self._add('girth', girth.length if girth else None)
        self._add('cycle', data_utils.one_based(girth.cycle) if girth else None)
        if girth:
            cycle = graph.cycle_report(girth.cycle)
            self._add('cycle_type', cycle.cycle_type.value)
            self._add('approximate', cycle.approximate)
            self._add('ambiguous', cycle.ambiguous)
        self._output_report(self.config.output_path)
        return EXIT_OK


class ClassifyExecutor(ExecutorBase):

    def _exec(self) -> int:
        graph = self._read_graph()
        if not graph.is_connected():
            raise DisconnectedGraphException(f'classification needs a connected graph, {graph} is not')
        report = classify(graph, self.config.method, self.config.tol)
        for name, value in report.to_dict().items():
            self._add(name, value)
        self._output_report(self.config.output_path)
        return EXIT_OK if report.prediction_agrees else EXIT_DISAGREEMENT


class ReduceExecutor(ExecutorBase):
    """
    writes the reduced graph to -o (or stdout) with the removal ledger
    """

    def _exec(self) -> int:
        graph = self._read_graph()
        reduced = reduced_graph(graph)
        kept = set(reduced.labels)
        removed = data_utils.one_based(label for label in graph.labels if label not in kept)
        trim = trim_pendant_pairs(graph)
        ledger = [f'reduced from {graph.n} vertices', f'removed: {" ".join(str(v) for v in removed) or "-"}',
                  f'pendant pairs: {trim.pairs}']

        self._add('n', graph.n)
        self._add('reduced_n', reduced.n)
        self._add('removed', removed)
        self._add('kept', data_utils.one_based(reduced.labels))
        self._add('pendant_pairs', trim.pairs)

        if self.config.output_path:
            write_qgg(self.config.output_path, reduced, ledger)
            self._output_report()
        elif self.config.output == OutputFormat.JSON:
            self._add('graph', emit_qgg(reduced))
            self._output_report()
        else:
            OutputManager().output_graph(reduced, ledger)
        return EXIT_OK


class RandomExecutor(ExecutorBase):
    """
    draws seeded gains from the configured gain set for an underlying-graph edge list
    """

    def _exec(self) -> int:
        underlying = self._read_graph(tower=Tower.EXACT, require_gains=False)
        rng = np.random.default_rng(self.config.seed)
        graph = generators.random_gains(underlying.n, underlying.edge_pairs(), rng, self.config.gain_set)
        comments = [f'seed: {self.config.seed}', f'gain set: {self.config.gain_set.value}']
        OutputManager(self.config.output_path).output_graph(graph, comments)
        return EXIT_OK


class VerifyExecutor(ExecutorBase):

    def _exec(self) -> int:
        results = SuiteRunner(self.config.verification, self.config.suites).run()
        app_config = self.config.app_config
        output_manager = OutputManager(self.config.output_path, app_config.witness_directory)
        output_manager.save_witnesses(results.witnesses)
        output_manager.save_witnesses(results.notes, prefix='note')

        total = results.total
        container = self.data_container
        container.add(ReportItemName.STATUS.value, 'pass' if results.passed else 'fail', ReportItemGroup.SUMMARY)
        container.add(ReportItemName.PASS_RATE.value,
                      data_utils.calc_percentage(total.passed, total.passed + total.failed), ReportItemGroup.SUMMARY)
        container.add(ReportItemName.UNMATCHED.value, len(results.unmatched), ReportItemGroup.SUMMARY)
        container.add(ReportItemName.SUMMARY.value, results.summary_frame(), ReportItemGroup.SUITE)
        container.add(ReportItemName.WITNESSES.value, [w.to_dict() for w in results.witnesses])
        container.add(ReportItemName.NOTES.value, [n.to_dict() for n in results.notes])
        container.add(ReportItemName.CONFIG.value, self.config.to_dict())

        output_manager.output(self._generate_report({ReportItemName.REPORT_TITLE.value: app_config.report_title}))
        if not results.passed:
            logger.warning(f'{len(results.witnesses)} falsifications, witnesses in {output_manager.witness_directory}')
        return EXIT_OK if results.passed else EXIT_DISAGREEMENT


executors = {
    Command.RANK: RankExecutor,
    Command.GIRTH: GirthExecutor,
    Command.CLASSIFY: ClassifyExecutor,
    Command.REDUCE: ReduceExecutor,
    Command.RANDOM: RandomExecutor,
    Command.VERIFY: VerifyExecutor,
}
