import math
import os

import pytest

from gainrank.algebra.quat import ONE, Quaternion
from gainrank.app_config import VerificationConfig
from gainrank.exceptions import FalsificationException
from gainrank.graphs import generators
from gainrank.graphs.gain_graph import GainGraph
from gainrank.output_manager import OutputManager
from gainrank.results import VerificationResults
from gainrank.theorems import templates
from gainrank.theorems.classifiers import GraphFacts
from gainrank.utils.consts import CycleType, GainSet, Suite
from gainrank.verification import checks, harness
from gainrank.verification.suites import ClassificationsSuite, SuiteRunner, suite_rng

CORPUS_SUITES = (Suite.GIRTH_BOUND, Suite.TABLES, Suite.CLASSIFICATIONS)


@pytest.fixture
def small_config():
    config = VerificationConfig()
    config.max_n = 4
    config.samples = 3
    config.matrix_samples = 10
    config.k4_samples = 5
    config.random_graphs = 10
    config.switchings = 2
    config.canonical_instances = 6
    config.max_formula_n = 8
    config.threads = 1
    return config


def test_worked_examples(k32, reducible_triangle, theta_111):
    checks.check_k32_example(k32)
    checks.check_reducible_triangle_example(reducible_triangle)
    checks.check_theta_111_example(theta_111)
    assert 'rank 2' in checks.check_k4_counterexample(templates.k4_rank2_counterexample())


def test_wrong_prediction_raises_with_witness():
    graph = generators.cycle_graph(4, CycleType.TYPE1)
    with pytest.raises(FalsificationException) as e:
        checks.check_cycle_rank(graph, CycleType.TYPE2)
    assert e.value.check == 'cycle-rank'
    assert e.value.graph is graph


def test_k32_example_rejects_other_graphs(theta_111):
    with pytest.raises(FalsificationException):
        checks.check_k32_example(theta_111)


def test_reduction_checks(rng):
    for _ in range(10):
        graph = generators.random_graph(7, rng, 0.4)
        checks.check_trim_identity(graph)
        checks.check_twin_invariance(graph)
        checks.check_reduced_invariance(graph, rng)
        checks.check_reduction_confluence(graph, rng)
        checks.check_switching_invariance(graph, generators.random_switching(7, rng))
        checks.check_vertex_deletion(graph, 3)
        checks.check_induced_subgraph(graph, [0, 2, 4])
        checks.check_component_additivity(graph)


def test_corpus_jobs():
    jobs = harness.corpus_jobs(5, 2, 1, GainSet.LIPSCHITZ, CORPUS_SUITES)
    assert [(job.n, job.unit) for job in jobs] == [(2, 0), (3, 0), (4, 0), (5, 0)]
    assert len(harness.corpus_jobs(6, 2, 1, GainSet.LIPSCHITZ, CORPUS_SUITES)) == 4 + 8


def test_run_unit_is_reproducible():
    job = harness.CorpusJob(4, 0, 2, 5, GainSet.LIPSCHITZ, CORPUS_SUITES)
    first, second = harness.run_unit(job), harness.run_unit(job)
    assert first.tallies == second.tallies
    assert first.passed
    # 38 connected labeled graphs on 4 vertices, two samples each
    assert first.tallies[Suite.CLASSIFICATIONS.value]['rank-2'].passed == 76


def test_corpus_independent_of_workers():
    inline = harness.run_corpus(4, 2, 3, GainSet.LIPSCHITZ, CORPUS_SUITES, threads=1)
    pooled = harness.run_corpus(4, 2, 3, GainSet.LIPSCHITZ, CORPUS_SUITES, threads=2)
    assert inline.tallies == pooled.tallies
    assert inline.passed and pooled.passed


def test_suite_rng_depends_on_suite():
    a = suite_rng(1, Suite.FORMULAS).integers(1 << 30)
    b = suite_rng(1, Suite.TABLES).integers(1 << 30)
    assert a == suite_rng(1, Suite.FORMULAS).integers(1 << 30)
    assert a != b


@pytest.mark.parametrize('suite', [Suite.FORMULAS, Suite.REDUCTIONS, Suite.TABLES])
def test_single_suite(small_config, suite):
    results = SuiteRunner(small_config, [suite]).run()
    assert results.passed
    assert list(results.tallies) == [suite.value]
    assert results.total.passed > 0


def test_all_suites_pass(small_config):
    results = SuiteRunner(small_config, [s for s in Suite if s != Suite.ALL]).run()
    assert results.passed, [w.to_dict() for w in results.witnesses]
    assert set(results.tallies) == {s.value for s in Suite if s != Suite.ALL}
    frame = results.summary_frame()
    assert list(frame.columns) == ['suite', 'check', 'passed', 'failed']
    assert frame['failed'].sum() == 0


def test_results_bookkeeping(tmp_path, k32):
    results = VerificationResults()
    results.record_pass('formulas', 'path-rank')
    results.record_failure('formulas', FalsificationException('cycle-rank', 'formula 4, computed 2', k32))
    results.record_failure('tables', FalsificationException('pendant-table', 'mismatch', generators.cycle_graph(4)),
                           'bicyclic-tables')

    other = VerificationResults()
    other.record_pass('formulas', 'path-rank')
    other.record_unmatched('tables', 'pendant-table', k32)
    results.merge(other)

    assert not results.passed
    assert results.tallies['formulas']['path-rank'].passed == 2
    assert (results.total.passed, results.total.failed) == (2, 2)
    assert results.witnesses[1].check == 'bicyclic-tables'
    assert results.witnesses[1].detail == 'pendant-table: mismatch'
    assert len(results.unmatched) == 1
    assert results.summary_frame('tables')['check'].tolist() == ['bicyclic-tables']
    assert results.to_dict()['status'] == 'fail'

    written = OutputManager(str(tmp_path / 'report.json')).save_witnesses(results.witnesses)
    assert len(written) == 2
    assert os.path.dirname(written[0]) == str(tmp_path / 'witnesses')
    assert results.witnesses[0].file == written[0]
    with open(written[0]) as f:
        text = f.read()
    assert '# check: cycle-rank' in text
    assert 'n 5' in text


def test_k4_counterexample_is_kept_as_note(tmp_path, small_config):
    results = SuiteRunner(small_config, [Suite.CLASSIFICATIONS]).run()
    assert results.passed
    assert 'k4-counterexample' not in results.tallies[Suite.CLASSIFICATIONS.value]
    assert [(n.suite, n.check) for n in results.notes] == [(Suite.CLASSIFICATIONS.value, 'k4-counterexample')]
    assert 'rank 2' in results.notes[0].detail
    assert results.to_dict()['notes'][0]['check'] == 'k4-counterexample'

    written = OutputManager(str(tmp_path / 'report.json')).save_witnesses(results.notes, prefix='note')
    assert len(written) == 1
    assert os.path.basename(written[0]).startswith('note-')
    assert results.notes[0].file == written[0]


def test_notes_merge(k32):
    results, other = VerificationResults(), VerificationResults()
    other.record_note('classifications', 'k4-counterexample', 'rank 2', k32)
    results.merge(other)
    assert results.passed
    assert results.notes[0].graph is k32
    assert results.total.passed == results.total.failed == 0


def nearly_type4_triangle():
    gain = Quaternion.approx(1e-7, math.sqrt(1 - 1e-14))
    one = ONE.to_float()
    return GainGraph.from_edges(3, [(0, 1, one), (1, 2, one), (2, 0, gain)])


def test_undecidable_cycle_type_is_recorded_as_unmatched(small_config):
    results = VerificationResults()
    graph = nearly_type4_triangle()
    harness.check_graph(results, GraphFacts(graph), CORPUS_SUITES)
    assert results.passed
    assert {u.check for u in results.unmatched} >= {'rank-2', 'girth-bound', 'rank-girth'}
    assert all(u.graph is graph for u in results.unmatched)
    assert Suite.CLASSIFICATIONS.value not in results.tallies

    suite = ClassificationsSuite(small_config, results)
    suite.check('reducible-triangle-example', checks.check_reducible_triangle_example, graph)
    assert results.unmatched[-1].check == 'reducible-triangle-example'
    assert results.unmatched[-1].graph is graph
    assert Suite.CLASSIFICATIONS.value not in results.tallies
