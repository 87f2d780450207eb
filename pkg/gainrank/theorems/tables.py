import logging
from dataclasses import dataclass
from typing import Dict, Optional

from gainrank.exceptions import WrongFamilyException, PendantTwinsException
from gainrank.graphs.gain_graph import GainGraph
from gainrank.theorems.templates import (Prediction, PENDANT_FREE_TEMPLATES, PENDANT_TEMPLATES, TEMPLATE_LABELS,
                                         find_template)

logger = logging.getLogger(__name__)

__all__ = ['Prediction', 'TableMatch', 'TABLE_LABELS', 'table_label', 'predict_pendant_free_rank',
           'predict_pendant_rank4', 'has_pendant_twins']

TABLE_LABELS = {'pendant-free': 'Table 1', 'pendant': 'Table 2'}


def table_label(table: str, template: Optional[str], prediction) -> str:
    return f'{TABLE_LABELS[table]} / {TEMPLATE_LABELS.get(template, "unlisted")} / rank {prediction}'


@dataclass(frozen=True)
class TableMatch:
    table: str
    template: Optional[str]
    prediction: Prediction

    @property
    def case(self) -> str:
        return f'{self.table}:{self.template or "unlisted"}/rank {self.prediction}'

    @property
    def label(self) -> str:
        return table_label(self.table, self.template, self.prediction)

    def to_dict(self) -> Dict:
        return {'table': self.table, 'template': self.template, 'prediction': str(self.prediction), 'label': self.label}


def _check_bicyclic(graph: GainGraph):
    if not graph.is_connected() or graph.edge_count != graph.n + 1:
        raise WrongFamilyException(f'{graph} is not a connected bicyclic graph')


def has_pendant_twins(graph: GainGraph) -> bool:
    hubs = [next(iter(graph.neighbors(v))) for v in graph.pendant_vertices()]
    return len(hubs) != len(set(hubs))


def predict_pendant_free_rank(graph: GainGraph) -> TableMatch:
    """
    rank prediction for a connected bicyclic graph without pendant vertices.
    shapes outside the table have rank above 4
    """
    _check_bicyclic(graph)
    if graph.pendant_vertices():
        raise WrongFamilyException(f'{graph} has pendant vertices')

    found = find_template(PENDANT_FREE_TEMPLATES, graph)
    if found is None:
        return TableMatch('pendant-free', None, Prediction.greater_than(4))
    template, mapping = found
    prediction = template.predict(graph, mapping)
    logger.debug(f'{graph} matches {template.name}, predicted rank {prediction}')
    return TableMatch('pendant-free', template.name, prediction)


def predict_pendant_rank4(graph: GainGraph) -> TableMatch:
    """
    rank-4 prediction for a connected bicyclic graph with pendant vertices and no pendant twins
    """
    _check_bicyclic(graph)
    if not graph.pendant_vertices():
        raise WrongFamilyException(f'{graph} has no pendant vertices')
    if has_pendant_twins(graph):
        raise PendantTwinsException(f'{graph} has pendant twins; remove them first')

    found = find_template(PENDANT_TEMPLATES, graph)
    if found is None:
        return TableMatch('pendant', None, Prediction.not_equal(4))
    template, mapping = found
    prediction = template.predict(graph, mapping)
    logger.debug(f'{graph} matches {template.name}, predicted rank {prediction}')
    return TableMatch('pendant', template.name, prediction)
