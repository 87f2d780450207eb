from typing import List

from pandas import DataFrame

from gainrank.report_generators.generator_base import ReportGeneratorBase


class TextReportGenerator(ReportGeneratorBase):

    @staticmethod
    def _format(name: str, value) -> List[str]:
        if isinstance(value, DataFrame):
            return [f'{name}:'] + ['  ' + line for line in value.to_string(index=False).splitlines()]
        if isinstance(value, dict):
            lines = [f'{name}:']
            for k, v in value.items():
                lines += ['  ' + line for line in TextReportGenerator._format(str(k), v)]
            return lines
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines = [f'{name}:']
            for entry in value:
                lines.append('  - ' + ', '.join(f'{k}={v}' for k, v in entry.items()))
            return lines
        if isinstance(value, list):
            return [f'{name}: {" ".join(str(v) for v in value)}']
        if value is None:
            return [f'{name}: -']
        return [f'{name}: {value}']

    def generate(self, additional_data_items=None) -> str:
        lines = []
        for name, value in (additional_data_items or {}).items():
            lines += self._format(name, value)
        for item in self.data_container.data_items.values():
            lines += self._format(item.name, item.value)
        return '\n'.join(lines) + '\n'
