import hashlib
import logging
import os
import sys
from typing import Iterable, List, Optional

from gainrank.graphs.gain_graph import GainGraph
from gainrank.graphs.qgg_format import emit_qgg
from gainrank.results import Witness

logger = logging.getLogger(__name__)


def witness_file_name(graph: GainGraph, prefix: str = 'witness') -> str:
    digest = hashlib.sha256(emit_qgg(graph).encode('utf-8')).hexdigest()
    return f'{prefix}-{digest[:16]}.qgg'


class OutputManager:
    """
    writes reports and graphs to a file, or to stdout when no path is given
    """

    def __init__(self, output_path: Optional[str] = None, witness_directory: str = 'witnesses'):
        self.output_path = output_path
        # witnesses go next to the report
        base = os.path.dirname(output_path) if output_path else ''
        self.witness_directory = os.path.join(base, witness_directory) if base else witness_directory

    def output(self, report_str: str):
        if not self.output_path:
            sys.stdout.write(report_str)
            sys.stdout.flush()
            return
        self._save_report(self.output_path, report_str)

    @staticmethod
    def _save_report(path: str, report_str: str):
        directory = os.path.dirname(path)
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        logger.info(f'saving generated report file as {path}')
        with open(path, 'w') as f:
            f.write(report_str)

    def output_graph(self, graph: GainGraph, comments: Iterable[str] = ()):
        self.output(emit_qgg(graph, comments))

    def save_witnesses(self, witnesses: List[Witness], prefix: str = 'witness') -> List[str]:
        """
        writes each witness graph as a content-addressed qgg file and records the file name on the witness
        """
        written = []
        for witness in witnesses:
            if witness.graph is None:
                continue
            if not os.path.exists(self.witness_directory):
                os.makedirs(self.witness_directory)
            path = os.path.join(self.witness_directory, witness_file_name(witness.graph, prefix))
            detail = ' '.join(witness.detail.split())
            comments = [f'suite: {witness.suite}', f'check: {witness.check}', f'detail: {detail}']
            logger.info(f'saving {prefix} for {witness.check} as {path}')
            with open(path, 'w') as f:
                f.write(emit_qgg(witness.graph, comments))
            witness.file = path
            written.append(path)
        return written
