import json
from enum import Enum

from pandas import DataFrame

from gainrank.report_generators.generator_base import ReportGeneratorBase


def to_jsonable(value):
    if isinstance(value, DataFrame):
        return value.to_dict(orient='records')
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, 'to_dict'):
        return to_jsonable(value.to_dict())
    return value


class JSONReportGenerator(ReportGeneratorBase):
    """
    stable schema: sorted keys, no locale dependent formatting
    """

    def generate(self, additional_data_items=None) -> str:
        items = dict(additional_data_items or {})
        items.update(self.data_container.to_dict())
        return json.dumps(to_jsonable(items), indent=2, sort_keys=True) + '\n'
