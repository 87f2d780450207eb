"""
exhaustive corpus runner. every connected labeled graph on up to max_n vertices gets `samples`
random gain assignments; the corpus is cut into bitmask work units that run in a process pool
"""
import logging
import multiprocessing
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

from gainrank.exceptions import AmbiguousCycleTypeException, FalsificationException
from gainrank.graphs import generators
from gainrank.results import VerificationResults
from gainrank.theorems.classifiers import GraphFacts
from gainrank.utils.consts import GainSet, RankMethod, Suite, QGG_THREADS, DEFAULT_TOLERANCE
from gainrank.verification import checks

logger = logging.getLogger(__name__)

MIN_CORPUS_N = 2

CorpusCheck = Tuple[str, Callable[[GraphFacts], object]]


@dataclass(frozen=True)
class CorpusJob:
    n: int
    unit: int
    samples: int
    seed: int
    gain_set: GainSet
    suites: Tuple[Suite, ...]
    tol: float = DEFAULT_TOLERANCE


def _cyclic_checks(suites: Sequence[Suite]) -> List[Tuple[Suite, CorpusCheck]]:
    selected = []
    if Suite.GIRTH_BOUND in suites:
        selected += [(Suite.GIRTH_BOUND, ('girth-bound', checks.check_girth_bound)),
                     (Suite.GIRTH_BOUND, ('dominating-cycle', checks.check_dominating_cycle)),
                     (Suite.GIRTH_BOUND, ('cycle-neighbours', checks.check_cycle_neighbours))]
    if Suite.CLASSIFICATIONS in suites:
        selected.append((Suite.CLASSIFICATIONS, ('rank-girth', checks.check_rank_girth)))
    return selected


def _run_check(results: VerificationResults, suite: Suite, name: str, check, facts: GraphFacts):
    try:
        outcome = check(facts)
    except FalsificationException as e:
        logger.warning(f'falsified {e}')
        if e.graph is None:
            e.graph = facts.graph
        results.record_failure(suite.value, e, name)
        return
    except AmbiguousCycleTypeException as e:
        logger.warning(f'{name} left undecided: {e}')
        results.record_unmatched(suite.value, name, facts.graph)
        return
    if outcome is False:
        results.record_unmatched(suite.value, name, facts.graph)
    results.record_pass(suite.value, name)


def check_graph(results: VerificationResults, facts: GraphFacts, suites: Sequence[Suite]):
    """
    runs every selected corpus check on one gain graph
    """
    graph = facts.graph
    if Suite.CLASSIFICATIONS in suites:
        _run_check(results, Suite.CLASSIFICATIONS, 'rank-2', checks.check_rank2, facts)
    if facts.girth is not None:
        for suite, (name, check) in _cyclic_checks(suites):
            _run_check(results, suite, name, check, facts)

    if Suite.TABLES not in suites:
        return
    if graph.edge_count == graph.n:
        _run_check(results, Suite.TABLES, 'canonical-unicyclic', checks.check_canonical_member, facts)
    elif graph.edge_count == graph.n + 1:
        try:
            open_case = checks.check_bicyclic_tables(facts)
        except FalsificationException as e:
            logger.warning(f'falsified {e}')
            results.record_failure(Suite.TABLES.value, e, 'bicyclic-tables')
            return
        except AmbiguousCycleTypeException as e:
            logger.warning(f'bicyclic-tables left undecided: {e}')
            results.record_unmatched(Suite.TABLES.value, 'bicyclic-tables', graph)
            return
        if open_case is not None:
            results.record_unmatched(Suite.TABLES.value, 'pendant-table', graph)
        results.record_pass(Suite.TABLES.value, 'bicyclic-tables')


def run_unit(job: CorpusJob) -> VerificationResults:
    rng = generators.unit_rng(job.seed, job.n, job.unit)
    results = VerificationResults()
    count = 0
    for pairs in generators.connected_graphs_in_unit(job.n, job.unit):
        for _ in range(job.samples):
            graph = generators.random_gains(job.n, pairs, rng, job.gain_set)
            check_graph(results, GraphFacts(graph, RankMethod.ELIMINATION, job.tol), job.suites)
        count += 1
    logger.debug(f'unit {job.unit} of n={job.n}: {count} connected graphs, {len(results.witnesses)} witnesses')
    return results


def corpus_jobs(max_n: int, samples: int, seed: int, gain_set: GainSet, suites: Sequence[Suite],
                tol: float = DEFAULT_TOLERANCE) -> List[CorpusJob]:
    return [CorpusJob(n, unit, samples, seed, gain_set, tuple(suites), tol)
            for n in range(MIN_CORPUS_N, max_n + 1) for unit in range(generators.unit_count(n))]


def run_corpus(max_n: int, samples: int, seed: int, gain_set: GainSet, suites: Sequence[Suite],
               tol: float = DEFAULT_TOLERANCE, threads: int = QGG_THREADS) -> VerificationResults:
    """
    results depend on (max_n, samples, seed, gain_set) only; units are merged in order
    """
    jobs = corpus_jobs(max_n, samples, seed, gain_set, suites, tol)
    threads = max(1, min(threads, len(jobs)))
    logger.info(f'running {len(jobs)} corpus units for n <= {max_n} with {threads} workers')

    if threads == 1:
        unit_results = [run_unit(job) for job in jobs]
    else:
        with multiprocessing.Pool(processes=threads) as pool:
            unit_results = pool.map(run_unit, jobs, chunksize=1)

    results = VerificationResults()
    for unit in unit_results:
        results.merge(unit)
    return results
