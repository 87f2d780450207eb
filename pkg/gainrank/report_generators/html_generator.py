import logging
import pathlib
from typing import List

import plotly.graph_objs as go
from jinja2 import Environment, FileSystemLoader, select_autoescape
from markupsafe import Markup
from pandas import DataFrame
from plotly.offline import plot

from gainrank.model import DataSeries, ItemDefinition
from gainrank.report_generators.generator_base import ReportGeneratorBase
from gainrank.utils.consts import ReportItemName, ItemType, ReportItemGroup

logger = logging.getLogger(__name__)

jinja_env = Environment(
    loader=FileSystemLoader(f'{pathlib.Path(__file__).parent.absolute()}/../../report_templates'),
    autoescape=select_autoescape(['html'])
)


class ChartPlotter:

    @staticmethod
    def _get_value_div(chart_def: ItemDefinition) -> str:
        return chart_def.x[0]

    @staticmethod
    def _get_chart_div(chart_def: ItemDefinition) -> str:
        data = [go.Bar(name=series.name, x=list(chart_def.x), y=list(series.values)) for series in chart_def.y]
        fig = go.Figure(data=data)
        fig.update_layout(template="plotly_dark", title=chart_def.item_name)
        if chart_def.chart_type == ItemType.STACK:
            fig.update_layout(barmode='stack')
        return plot(fig, output_type='div', include_plotlyjs='cdn')

    def get_div(self, chart_def: ItemDefinition) -> str:
        if chart_def.chart_type in [ItemType.BAR, ItemType.STACK]:
            return self._get_chart_div(chart_def)
        if chart_def.chart_type == ItemType.VALUE:
            return self._get_value_div(chart_def)
        raise Exception(f'unsupported chart type {chart_def.chart_type}')


class LayoutManager:

    def __init__(self, items_defs: List[ItemDefinition], template_name: str):
        self.items_defs = items_defs
        self.plotter: ChartPlotter = ChartPlotter()
        self.template_name = template_name

    def layout(self, data_items=None) -> str:
        data_items = dict(data_items or {})
        template = jinja_env.get_template(self.template_name)
        logger.debug(f'using {template} template file')

        for item_def in self.items_defs:
            div = self.plotter.get_div(item_def)
            if item_def.chart_type != ItemType.VALUE:
                div = Markup(div)
            if item_def.group is None:
                data_items[item_def.item_name] = div
            else:
                data_items.setdefault(item_def.group, {})[item_def.item_name] = div

        data_items.setdefault(ReportItemGroup.SUITE.value, {})
        return template.render(items=data_items)


class HTMLReportGenerator(ReportGeneratorBase):

    def generate(self, additional_data_items=None):
        items = dict(additional_data_items or {})
        items[ReportItemName.WITNESSES.value] = self.data_container.get_value(ReportItemName.WITNESSES.value, [])
        items[ReportItemName.NOTES.value] = self.data_container.get_value(ReportItemName.NOTES.value, [])
        return LayoutManager(self._data_to_items_defs(), self.config.app_config.template_name).layout(items)

    @staticmethod
    def create_item_definition_from_df(dataframe: DataFrame, item_name: str, chart_type: ItemType,
                                       group=None) -> ItemDefinition:
        if 'check' not in dataframe.columns:
            raise Exception("dataframe should have 'check' column")
        x_values = dataframe['check'].tolist()
        data_series = [DataSeries(column, dataframe[column].tolist()) for column in ('passed', 'failed')]
        return ItemDefinition(item_name, chart_type, x_values, data_series, group=group)

    def _data_to_items_defs(self) -> List[ItemDefinition]:
        items_defs = []
        for name in [ReportItemName.STATUS, ReportItemName.PASS_RATE, ReportItemName.UNMATCHED]:
            items_defs.append(ItemDefinition(name.value, ItemType.VALUE, [self.data_container.get_value(name.value)]))

        summary: DataFrame = self.data_container.get_value(ReportItemName.SUMMARY.value)
        if summary is None or summary.empty:
            return items_defs
        for suite_name, frame in summary.groupby('suite', sort=True):
            items_defs.append(self.create_item_definition_from_df(frame, suite_name, ItemType.STACK,
                                                                  group=ReportItemGroup.SUITE.value))
        return items_defs
