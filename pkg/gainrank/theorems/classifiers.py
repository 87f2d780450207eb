import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from gainrank.exceptions import (AcyclicGraphException, DisconnectedGraphException, FalsificationException,
                                 WrongFamilyException)
from gainrank.graphs.gain_graph import CycleReport, GainGraph, GirthResult
from gainrank.graphs.reduce import ShapeReport, recognize, reduced_graph, two_core
from gainrank.theorems import formulas, tables
from gainrank.theorems.templates import (Prediction, SUBDIVIDED_K4, GIRTH4_PENDANT_FREE, GIRTH4_PENDANT)
from gainrank.utils.consts import CycleType, Family, Relation, RankMethod, Tower, DEFAULT_TOLERANCE

logger = logging.getLogger(__name__)

UNCLASSIFIED = 'unclassified'


class GraphFacts:
    """
    lazily computed invariants shared by the classifiers. every cycle type decision goes
    through cycle_type, which raises AmbiguousCycleTypeException on a float gain inside the
    ambiguous band unless strict is off, and keeps the report of each decided cycle
    """

    def __init__(self, graph: GainGraph, method: RankMethod = RankMethod.ELIMINATION, tol: float = DEFAULT_TOLERANCE,
                 strict: bool = True):
        self.graph = graph
        self.method = method
        self.tol = tol
        self.strict = strict
        self.decided_cycles: Dict[Tuple[int, ...], CycleReport] = {}

    def cycle_type(self, cycle: Sequence[int], graph: Optional[GainGraph] = None) -> CycleType:
        graph = self.graph if graph is None else graph
        report = graph.cycle_report(cycle, self.strict)
        self.decided_cycles[tuple(graph.labels[v] for v in cycle)] = report
        return report.cycle_type

    @property
    def approximate(self) -> bool:
        return self.graph.tower == Tower.FLOAT

    @cached_property
    def rank(self) -> int:
        return self.graph.rank(self.method, self.tol).rank

    @cached_property
    def girth(self) -> Optional[GirthResult]:
        return self.graph.girth()

    @cached_property
    def shape(self) -> ShapeReport:
        return recognize(self.graph)

    @cached_property
    def reduced(self) -> GainGraph:
        return reduced_graph(self.graph)

    @cached_property
    def all_cycles_type1(self) -> bool:
        return all(self.cycle_type(c) == CycleType.TYPE1 for c in self.graph.all_cycles())


GraphLike = Union[GainGraph, GraphFacts]


def _facts(graph: GraphLike) -> GraphFacts:
    facts = graph if isinstance(graph, GraphFacts) else GraphFacts(graph)
    if not facts.graph.is_connected():
        raise DisconnectedGraphException(f'{facts.graph} is not connected')
    return facts


# published labels of the case ids
CASE_LABELS = {
    'girth-bound:cycle-type1': 'Thm 3.2(a)',
    'girth-bound:complete-bipartite-type1': 'Thm 3.2(b)',
    'rank-2:complete-bipartite-type1': 'Thm 4.10(a)',
    'rank-2:reduced-triangle-type4': 'Thm 4.10(b)',
    'rank-g-1:cycle-type4': 'Thm 5.1(a)',
    'rank-g-1:reduced-triangle-type4': 'Thm 5.1(b)',
    'rank-g:triangle-type3': 'Thm 4.9(a)',
    'rank-g:reduced-triangle-type3': 'Thm 4.9(b)',
    'rank-g:square-type2': 'Thm 5.10(a)',
    'rank-g:square-with-stars': 'Thm 5.10(b)',
    'rank-g:square-type1-joined-star': 'Thm 5.10(c)',
    'rank-g:reduced-pendant-free-bicyclic': 'Thm 5.10(d)',
    'rank-g:reduced-pendant-bicyclic': 'Thm 5.10(e)',
    'rank-g:cycle-type2-or-3': 'Thm 5.11(a)',
    'rank-g:theta-1-3-3-type1': 'Thm 5.11(b)',
    'rank-g:theta-3-3-3-type1': 'Thm 5.11(c)',
    'rank-g:subdivided-k4-type1': 'Thm 5.11(d)',
    'rank-g:canonical-unicyclic-even': 'Thm 5.11(e)',
    'rank-g:cycle-type1-joined-star': 'Thm 5.11(f)',
}
CANONICAL_UNICYCLIC_CASE = 'canonical-unicyclic/rank '


def case_label(case_id: str) -> str:
    """
    published label of a case id, e.g. 'Thm 3.2(b)' or 'Table 1 / G̃9 / rank 2'
    """
    if case_id in CASE_LABELS:
        return CASE_LABELS[case_id]
    if case_id.startswith(CANONICAL_UNICYCLIC_CASE):
        return f'Lemma 4.6 / rank {case_id[len(CANONICAL_UNICYCLIC_CASE):]}'
    table, _, rest = case_id.partition(':')
    if table in tables.TABLE_LABELS:
        template, _, prediction = rest.partition('/rank ')
        return tables.table_label(table, template, prediction)
    return case_id


def _cycle_dict(cycle: Sequence[int], report: CycleReport) -> Dict:
    return {'cycle': [v + 1 for v in cycle], **report.to_dict()}


@dataclass
class ClassificationReport:
    girth: Optional[int]
    rank: int
    relation: Relation
    matched_cases: List[str] = field(default_factory=list)
    prediction_agrees: bool = True
    sufficient_only: bool = False
    shape: Optional[ShapeReport] = None
    shortest_cycle: Optional[List[int]] = None
    shortest_cycle_report: Optional[CycleReport] = None
    approximate: bool = False
    decided_cycles: Dict[Tuple[int, ...], CycleReport] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def matched_case(self) -> str:
        return self.matched_cases[0] if self.matched_cases else UNCLASSIFIED

    @property
    def label(self) -> str:
        return case_label(self.matched_case)

    @property
    def shortest_cycle_type(self) -> Optional[CycleType]:
        return self.shortest_cycle_report.cycle_type if self.shortest_cycle_report else None

    def to_dict(self) -> Dict:
        return {'girth': self.girth,
                'rank': self.rank,
                'relation': self.relation.value,
                'case': self.label,
                'case_id': self.matched_case,
                'cases': [case_label(c) for c in self.matched_cases],
                'case_ids': list(self.matched_cases),
                'prediction_agrees': self.prediction_agrees,
                'sufficient_only': self.sufficient_only,
                'approximate': self.approximate,
                'shape': self.shape.to_dict() if self.shape else None,
                'shortest_cycle': [v + 1 for v in self.shortest_cycle] if self.shortest_cycle else None,
                'shortest_cycle_type': self.shortest_cycle_type.value if self.shortest_cycle_type else None,
                'shortest_cycle_report': _cycle_dict(self.shortest_cycle, self.shortest_cycle_report)
                if self.shortest_cycle_report else None,
                'decided_cycles': [_cycle_dict(c, r) for c, r in sorted(self.decided_cycles.items())],
                'notes': list(self.notes)}


def relation_of(rank: int, girth: Optional[int]) -> Relation:
    if girth is None:
        return Relation.ACYCLIC
    return {girth - 2: Relation.G_MINUS_2, girth - 1: Relation.G_MINUS_1, girth: Relation.EQUAL}.get(
        rank, Relation.BELOW if rank < girth - 2 else Relation.ABOVE)


# structural case predicates

def _cycle_type_in(facts: GraphFacts, types: Sequence[CycleType], length: Optional[int] = None) -> bool:
    shape = facts.shape.find(Family.CYCLE)
    if shape is None or (length is not None and shape.params[0] != length):
        return False
    return facts.cycle_type(shape.witness['cycle']) in types


def _all_squares_type1(facts: GraphFacts, parts: List[List[int]]) -> bool:
    left, right = parts
    for u1, u2 in combinations(left, 2):
        for v1, v2 in combinations(right, 2):
            if facts.cycle_type([u1, v1, u2, v2]) != CycleType.TYPE1:
                return False
    return True


def _complete_bipartite_type1(facts: GraphFacts, min_part: int) -> bool:
    shape = facts.shape.find(Family.COMPLETE_BIPARTITE)
    if shape is None or min(shape.params) < min_part:
        return False
    return _all_squares_type1(facts, shape.witness['parts'])


def _reduced_triangle(facts: GraphFacts, cycle_type: CycleType) -> bool:
    reduced = facts.reduced
    if reduced.n != 3 or reduced.edge_count != 3:
        return False
    return facts.cycle_type([0, 1, 2], reduced) == cycle_type


def _joined_star_cycle(facts: GraphFacts) -> Optional[List[int]]:
    """
    the cycle of a unicyclic graph made of a cycle and a star S_{q+1}, q >= 1, whose center
    is joined to one cycle vertex
    """
    graph = facts.graph
    if graph.edge_count != graph.n:
        return None
    core = set(two_core(graph))
    outside = [v for v in graph.vertices if v not in core]
    centers = [v for v in outside if graph.neighbors(v) & core]
    if len(centers) != 1:
        return None
    center = centers[0]
    if len(graph.neighbors(center) & core) != 1 or graph.degree(center) < 2:
        return None
    leaves = [v for v in outside if v != center]
    if any(graph.neighbors(v) != {center} for v in leaves) or graph.degree(center) != len(leaves) + 1:
        return None
    start = min(core)
    cycle, prev = [start], None
    while True:
        nxt = min(w for w in graph.neighbors(cycle[-1]) if w in core and w != prev)
        if nxt == start:
            return cycle
        prev = cycle[-1]
        cycle.append(nxt)


def _cycle_type1_joined_star(facts: GraphFacts, length: Optional[int] = None) -> bool:
    cycle = _joined_star_cycle(facts)
    if cycle is None or (length is not None and len(cycle) != length):
        return False
    return facts.cycle_type(cycle) == CycleType.TYPE1


def _theta_type1(facts: GraphFacts, params) -> bool:
    shape = facts.shape.find(Family.THETA)
    return shape is not None and shape.params == params and facts.all_cycles_type1


def _canonical(facts: GraphFacts):
    return facts.shape.find(Family.CANONICAL_UNICYCLIC)


def _reduced_table_rank4(facts: GraphFacts, names: Sequence[str], pendant: bool) -> bool:
    reduced = facts.reduced
    if not reduced.is_connected() or reduced.edge_count != reduced.n + 1:
        return False
    has_pendants = bool(reduced.pendant_vertices())
    if has_pendants != pendant or (pendant and tables.has_pendant_twins(reduced)):
        return False
    match = tables.predict_pendant_rank4(reduced) if pendant else tables.predict_pendant_free_rank(reduced)
    return match.template in names and match.prediction == Prediction.equal(4)


def _falsified(check: str, facts: GraphFacts, detail: str):
    raise FalsificationException(check, f'{detail} (rank {facts.rank}, girth '
                                        f'{facts.girth.length if facts.girth else None})', facts.graph)


def _check_iff(check: str, facts: GraphFacts, holds: bool, cases: List[str]):
    if holds and not cases:
        _falsified(check, facts, 'rank relation holds but no case matches')
    if cases and not holds:
        _falsified(check, facts, f'{cases} match but the rank relation fails')


# operations

def kab_rank2_iff(graph: GraphLike) -> bool:
    """
    True iff every 4-cycle across the bipartition of K_{a,b} (a, b >= 2) has Type1
    """
    facts = _facts(graph)
    shape = facts.shape.find(Family.COMPLETE_BIPARTITE)
    if shape is None or min(shape.params) < 2:
        raise WrongFamilyException(f'{facts.graph} is not a complete bipartite graph with both parts >= 2')
    return _all_squares_type1(facts, shape.witness['parts'])


def girth_bound_cases(graph: GraphLike) -> List[str]:
    facts = _facts(graph)
    cases = []
    if _cycle_type_in(facts, [CycleType.TYPE1]):
        cases.append('girth-bound:cycle-type1')
    if _complete_bipartite_type1(facts, 2):
        cases.append('girth-bound:complete-bipartite-type1')
    return cases


def verify_girth_bound(graph: GraphLike) -> ClassificationReport:
    """
    checks rank >= g - 2 and that equality holds exactly for Type1 cycles and for
    complete bipartite graphs whose 4-cycles are all Type1
    """
    facts = _facts(graph)
    if facts.girth is None:
        raise AcyclicGraphException(f'{facts.graph} has no cycle')
    g = facts.girth.length
    if facts.rank < g - 2:
        _falsified('girth-bound', facts, f'rank below g - 2 = {g - 2}')
    cases = girth_bound_cases(facts)
    _check_iff('girth-bound', facts, facts.rank == g - 2, cases)
    return ClassificationReport(g, facts.rank, relation_of(facts.rank, g), cases)


def rank2_cases(graph: GraphLike) -> List[str]:
    facts = _facts(graph)
    cases = []
    if _complete_bipartite_type1(facts, 1):
        cases.append('rank-2:complete-bipartite-type1')
    if _reduced_triangle(facts, CycleType.TYPE4):
        cases.append('rank-2:reduced-triangle-type4')
    return cases


def classify_rank2(graph: GraphLike) -> Optional[str]:
    facts = _facts(graph)
    cases = rank2_cases(facts)
    _check_iff('rank-2', facts, facts.rank == 2, cases)
    if len(cases) > 1:
        _falsified('rank-2', facts, f'cases {cases} are expected to be exclusive')
    return cases[0] if cases else None


def rank_girth_cases(graph: GraphLike) -> Dict[str, List[str]]:
    """
    structural cases grouped by the rank relation they certify: 'g-1', 'g=3', 'g=4' (sufficient
    only) and 'g>=5'
    """
    facts = _facts(graph)
    if facts.girth is None:
        raise AcyclicGraphException(f'{facts.graph} has no cycle')
    g = facts.girth.length
    groups = {'g-1': [], 'g=3': [], 'g=4': [], 'g>=5': []}

    if _cycle_type_in(facts, [CycleType.TYPE4]):
        groups['g-1'].append('rank-g-1:cycle-type4')
    if _reduced_triangle(facts, CycleType.TYPE4):
        groups['g-1'].append('rank-g-1:reduced-triangle-type4')

    if g == 3:
        if _cycle_type_in(facts, [CycleType.TYPE3], 3):
            groups['g=3'].append('rank-g:triangle-type3')
        if _reduced_triangle(facts, CycleType.TYPE3):
            groups['g=3'].append('rank-g:reduced-triangle-type3')
    elif g == 4:
        canonical = _canonical(facts)
        if _cycle_type_in(facts, [CycleType.TYPE2], 4):
            groups['g=4'].append('rank-g:square-type2')
        if canonical is not None and canonical.params[0] == 4 and canonical.params[1] <= 2 and \
                canonical.params[2] == 0:
            groups['g=4'].append('rank-g:square-with-stars')
        if _cycle_type1_joined_star(facts, 4):
            groups['g=4'].append('rank-g:square-type1-joined-star')
        if _reduced_table_rank4(facts, GIRTH4_PENDANT_FREE, pendant=False):
            groups['g=4'].append('rank-g:reduced-pendant-free-bicyclic')
        if _reduced_table_rank4(facts, GIRTH4_PENDANT, pendant=True):
            groups['g=4'].append('rank-g:reduced-pendant-bicyclic')
    else:
        canonical = _canonical(facts)
        if _cycle_type_in(facts, [CycleType.TYPE2, CycleType.TYPE3]):
            groups['g>=5'].append('rank-g:cycle-type2-or-3')
        if _theta_type1(facts, (1, 3, 3)):
            groups['g>=5'].append('rank-g:theta-1-3-3-type1')
        if _theta_type1(facts, (3, 3, 3)):
            groups['g>=5'].append('rank-g:theta-3-3-3-type1')
        if SUBDIVIDED_K4.match(facts.graph) is not None and facts.all_cycles_type1:
            groups['g>=5'].append('rank-g:subdivided-k4-type1')
        if canonical is not None and canonical.params[0] % 2 == 0 and canonical.params[2] == 0:
            groups['g>=5'].append('rank-g:canonical-unicyclic-even')
        if _cycle_type1_joined_star(facts):
            groups['g>=5'].append('rank-g:cycle-type1-joined-star')
    return groups


def classify_rank_eq_girth_family(graph: GraphLike) -> Optional[str]:
    """
    matched case for rank = g - 1 or rank = g. both directions are checked except at
    girth 4, where the listed cases are only known to be sufficient
    """
    facts = _facts(graph)
    groups = rank_girth_cases(facts)
    g = facts.girth.length
    diff = facts.rank - g

    _check_iff('rank-g-1', facts, diff == -1, groups['g-1'])
    if g == 3:
        _check_iff('rank-g', facts, diff == 0, groups['g=3'])
    elif g == 4:
        if groups['g=4'] and diff != 0:
            _falsified('rank-g', facts, f'{groups["g=4"]} match but rank != 4')
        if diff == 0 and not groups['g=4']:
            logger.info(f'girth 4, rank 4 graph matches no listed case: {facts.graph}')
    else:
        _check_iff('rank-g', facts, diff == 0, groups['g>=5'])

    if diff == -1:
        return groups['g-1'][0]
    if diff == 0:
        key = 'g=3' if g == 3 else 'g=4' if g == 4 else 'g>=5'
        return groups[key][0] if groups[key] else None
    return None


def k4_rank_check(graph: GraphLike) -> bool:
    facts = _facts(graph)
    shape = facts.shape.find(Family.COMPLETE)
    if shape is None or shape.params != (4,):
        raise WrongFamilyException(f'{facts.graph} is not K4')
    if facts.rank != 4:
        logger.warning(f'K4 with rank {facts.rank}: {facts.graph.edges()}')
    return facts.rank == 4


def classify(graph: GainGraph, method: RankMethod = RankMethod.ELIMINATION, tol: float = DEFAULT_TOLERANCE,
             strict: bool = True) -> ClassificationReport:
    """
    girth, rank and every matching case of the rank statements, with falsifications recorded
    in the report instead of raised.
    with strict (the default) a float cycle gain inside the ambiguous band raises
    AmbiguousCycleTypeException instead of being decided by the zero threshold
    """
    facts = _facts(GraphFacts(graph, method, tol, strict))
    girth = facts.girth.length if facts.girth else None
    report = ClassificationReport(girth, facts.rank, relation_of(facts.rank, girth), shape=facts.shape,
                                  approximate=facts.approximate, decided_cycles=facts.decided_cycles)

    def attempt(check, *args):
        try:
            return check(*args)
        except FalsificationException as e:
            logger.warning(f'falsified {e}')
            report.prediction_agrees = False
            report.notes.append(str(e))
            return None

    if facts.girth is not None:
        report.shortest_cycle = list(facts.girth.cycle)
        report.shortest_cycle_report = graph.cycle_report(facts.girth.cycle, strict)
        attempt(verify_girth_bound, facts)
        attempt(classify_rank_eq_girth_family, facts)
        groups = rank_girth_cases(facts)
        by_relation = {
            Relation.G_MINUS_2: girth_bound_cases(facts),
            Relation.G_MINUS_1: groups['g-1'],
            Relation.EQUAL: groups['g=3'] + groups['g=4'] + groups['g>=5'],
        }
        report.matched_cases += by_relation.get(report.relation, [])
        report.sufficient_only = girth == 4 and report.relation == Relation.EQUAL

    attempt(classify_rank2, facts)
    if facts.rank == 2:
        report.matched_cases += [c for c in rank2_cases(facts) if c not in report.matched_cases]

    for case in attempt(_family_formula_cases, facts) or []:
        report.matched_cases.append(case)
    return report


def _family_formula_cases(facts: GraphFacts) -> List[str]:
    """
    closed-form and table predictions for the families that have one
    """
    graph = facts.graph
    cases = []
    canonical = _canonical(facts)
    if canonical is not None:
        predicted = formulas.canonical_unicyclic_rank(graph)
        if predicted != facts.rank:
            _falsified('canonical-unicyclic', facts, f'formula predicts {predicted}')
        cases.append(f'canonical-unicyclic/rank {predicted}')

    if graph.edge_count == graph.n + 1:
        if not graph.pendant_vertices():
            match = tables.predict_pendant_free_rank(graph)
            if not match.prediction.holds_for(facts.rank):
                _falsified('pendant-free-table', facts, f'{match.case} predicted')
            cases.append(match.case)
        else:
            bound = formulas.bicyclic_lower_bound(graph)
            if facts.rank < bound:
                _falsified('bicyclic-lower-bound', facts, f'rank below bound {bound}')
            if not tables.has_pendant_twins(graph):
                match = tables.predict_pendant_rank4(graph)
                if match.template is not None and not match.prediction.holds_for(facts.rank):
                    _falsified('pendant-table', facts, f'{match.case} predicted')
                if match.template is not None:
                    cases.append(match.case)
    return cases
