import logging
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence, Type

import numpy as np

from gainrank.algebra.qlinalg import QMatrix
from gainrank.algebra.quat import random_gain
from gainrank.app_config import VerificationConfig
from gainrank.exceptions import AmbiguousCycleTypeException, FalsificationException
from gainrank.graphs import generators
from gainrank.graphs.gain_graph import GainGraph
from gainrank.results import VerificationResults
from gainrank.theorems import templates
from gainrank.utils.consts import CycleType, GainSet, Suite
from gainrank.verification import checks, harness

logger = logging.getLogger(__name__)

FORMULA_ATTACHMENT_MAX_LENGTH = 9
TEMPLATE_SWITCHINGS = 3


def suite_rng(seed: int, suite: Suite) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed] + list(suite.value.encode())))


def _admissible_types(length: int) -> List[CycleType]:
    return [t for t in CycleType if t.even == (length % 2 == 0)]


class SuiteBase(ABC):
    suite: Suite
    # whether the suite also runs checks over the exhaustive corpus
    corpus = False

    def __init__(self, config: VerificationConfig, results: VerificationResults):
        self.config = config
        self.results = results
        self.rng = suite_rng(config.seed, self.suite)

    def run(self):
        logger.info(f'executing {self.__class__.__name__} verification suite')
        self.run_internal()

    @abstractmethod
    def run_internal(self):
        raise NotImplementedError('must be implemented by subclasses')

    def check(self, name: str, check, *args):
        try:
            check(*args)
        except FalsificationException as e:
            logger.warning(f'falsified {e}')
            self.results.record_failure(self.suite.value, e, name)
            return
        except AmbiguousCycleTypeException as e:
            logger.warning(f'{name} left undecided: {e}')
            self.results.record_unmatched(self.suite.value, name, _graph_of(args))
            return
        self.results.record_pass(self.suite.value, name)

    def note(self, name: str, check, *args):
        """
        runs a check whose outcome is a finding rather than a pass; the returned detail is
        kept as a note together with the graph
        """
        try:
            detail = check(*args)
        except FalsificationException as e:
            logger.warning(f'falsified {e}')
            self.results.record_failure(self.suite.value, e, name)
            return
        logger.info(f'{name}: {detail}')
        self.results.record_note(self.suite.value, name, detail, _graph_of(args))


def _graph_of(args) -> Optional[GainGraph]:
    return next((a for a in args if isinstance(a, GainGraph)), None)


class FormulasSuite(SuiteBase):
    suite = Suite.FORMULAS

    def run_internal(self):
        cfg = self.config
        for _ in range(cfg.matrix_samples):
            rows, cols = (int(x) for x in self.rng.integers(1, 11, size=2))
            self.check('rank-oracles', checks.check_rank_oracles,
                       QMatrix(generators.random_matrix(rows, cols, self.rng)))

        for n in range(1, cfg.max_formula_n + 1):
            self.check('path-rank', checks.check_path_rank, generators.path_graph(n, self.rng))

        for n in range(3, cfg.max_formula_n + 1):
            for cycle_type in _admissible_types(n):
                graph = generators.cycle_graph(n, cycle_type).switch(generators.random_switching(n, self.rng))
                self.check('cycle-rank', checks.check_cycle_rank, graph, cycle_type)

        self._cycle_attachments()
        self._canonical_unicyclic()

    def _cycle_attachments(self):
        for length in range(3, min(self.config.max_formula_n, FORMULA_ATTACHMENT_MAX_LENGTH) + 1):
            for cycle_type in _admissible_types(length):
                base = generators.random_connected_graph(int(self.rng.integers(2, 6)), self.rng)
                u = int(self.rng.integers(base.n))
                glued = generators.attach_cycle(base, u, length, cycle_type)
                glued = glued.switch(generators.random_switching(glued.n, self.rng))
                self.check('cycle-attachment', checks.check_cycle_attachment, glued, base, u, length, cycle_type)

    def _canonical_unicyclic(self):
        for i in range(self.config.canonical_instances):
            g = 3 + i % 6
            t = int(self.rng.integers(1, g + 1))
            starred = sorted(int(v) for v in self.rng.choice(g, size=t, replace=False))
            leaves = {v: int(self.rng.integers(1, 3)) for v in starred}
            graph = generators.canonical_unicyclic_graph(g, leaves, random_gain(self.rng, GainSet.LIPSCHITZ))
            graph = graph.switch(generators.random_switching(graph.n, self.rng))
            self.check('canonical-unicyclic', checks.check_canonical_unicyclic, graph)


class GirthBoundSuite(SuiteBase):
    suite = Suite.GIRTH_BOUND
    corpus = True

    def run_internal(self):
        for length in range(3, self.config.max_formula_n + 1):
            for cycle_type in _admissible_types(length):
                self.check('girth-bound', checks.check_girth_bound, generators.cycle_graph(length, cycle_type))
        self.check('k32-example', checks.check_k32_example, templates.k32_example())


class TablesSuite(SuiteBase):
    suite = Suite.TABLES
    corpus = True

    def run_internal(self):
        switchings = min(self.config.switchings, TEMPLATE_SWITCHINGS)
        for template in templates.PENDANT_FREE_TEMPLATES + templates.PENDANT_TEMPLATES:
            for sample in template.samples:
                self.check(f'template:{template.name}', checks.check_template_sample, template, sample,
                           self.config.tol)
                for _ in range(switchings):
                    xi = generators.random_switching(template.n, self.rng)
                    self.check(f'template:{template.name}', checks.check_template_switching, template, sample, xi)

        self.check('theta-1-3-3', checks.check_special_shape, 'theta-1-3-3', templates.theta_133_type1(), 6)
        self.check('theta-3-3-3', checks.check_special_shape, 'theta-3-3-3', templates.theta_333_type1(), 8)
        self.check('subdivided-k4', checks.check_special_shape, 'subdivided-k4', templates.subdivided_k4_type1(), 6)
        self.check('theta-1-1-1-example', checks.check_theta_111_example, templates.theta_111_example())


class ClassificationsSuite(SuiteBase):
    suite = Suite.CLASSIFICATIONS
    corpus = True

    def run_internal(self):
        self.check('reducible-triangle-example', checks.check_reducible_triangle_example,
                   templates.reducible_triangle_example())

        slots = generators.edge_slots(4)
        for _ in range(self.config.k4_samples):
            self.check('k4-rank', checks.check_k4, generators.random_gains(4, slots, self.rng, GainSet.LIPSCHITZ))
        for _ in range(self.config.k4_samples):
            self.check('k4-rank-uniform', checks.check_k4,
                       generators.random_gains(4, slots, self.rng, GainSet.UNIFORM), self.config.tol)
        self.note('k4-counterexample', checks.check_k4_counterexample, templates.k4_rank2_counterexample(),
                  self.config.tol)


class ReductionsSuite(SuiteBase):
    suite = Suite.REDUCTIONS

    def run_internal(self):
        cfg = self.config
        for _ in range(cfg.random_graphs):
            n = int(self.rng.integers(2, 11))
            graph = generators.random_graph(n, self.rng, float(self.rng.uniform(0.15, 0.5)), cfg.gain_set)
            tol = cfg.tol
            self.check('pendant-trim', checks.check_trim_identity, graph, tol)
            self.check('pendant-twins', checks.check_twin_invariance, graph, tol)
            self.check('reduced-graph', checks.check_reduced_invariance, graph, None, tol)
            self.check('reduction-confluence', checks.check_reduction_confluence, graph, self.rng, tol)

            girth = graph.girth()
            cycles = [list(girth.cycle)] if girth else []
            for _ in range(cfg.switchings):
                xi = generators.random_switching(n, self.rng, cfg.gain_set)
                self.check('switching', checks.check_switching_invariance, graph, xi, cycles, tol)

            self.check('vertex-deletion', checks.check_vertex_deletion, graph, int(self.rng.integers(n)), tol)
            size = int(self.rng.integers(1, n + 1))
            subset = [int(v) for v in self.rng.choice(n, size=size, replace=False)]
            self.check('induced-subgraph', checks.check_induced_subgraph, graph, subset, tol)
            self.check('component-additivity', checks.check_component_additivity, graph, tol)


verification_suites: Dict[Suite, Type[SuiteBase]] = {
    Suite.FORMULAS: FormulasSuite,
    Suite.GIRTH_BOUND: GirthBoundSuite,
    Suite.TABLES: TablesSuite,
    Suite.CLASSIFICATIONS: ClassificationsSuite,
    Suite.REDUCTIONS: ReductionsSuite,
}


class SuiteRunner:
    def __init__(self, config: VerificationConfig, suites: Sequence[Suite]):
        self.config = config
        self.suites = [s for s in verification_suites if s in suites]

    def run(self) -> VerificationResults:
        logger.info(f'executing verification suites {[s.value for s in self.suites]}')
        results = VerificationResults()
        corpus_suites = []
        for suite in self.suites:
            suite_cls = verification_suites[suite]
            suite_cls(self.config, results).run()
            if suite_cls.corpus:
                corpus_suites.append(suite)

        if corpus_suites:
            cfg = self.config
            results.merge(harness.run_corpus(cfg.max_n, cfg.samples, cfg.seed, cfg.gain_set, corpus_suites,
                                             cfg.tol, cfg.threads))
        return results
