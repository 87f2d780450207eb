"""
command line front door. exit codes: 0 pass, 1 mathematical disagreement or falsification,
2 usage, input or configuration error
"""
import argparse
import logging
from typing import List, Optional

from gainrank.app_config import AppConfig, RunConfig, ConfigurationException
from gainrank.exceptions import GainRankException
from gainrank.executors import executors, EXIT_USAGE
from gainrank.utils.consts import CONFIGURATION_FILE, Command, GainSet, OutputFormat, RankMethod, Suite, Tower

logger = logging.getLogger(__name__)

COMMAND_HELP = {
    Command.RANK: 'left row rank of a gain graph file',
    Command.GIRTH: 'girth and a shortest cycle',
    Command.CLASSIFY: 'girth, rank and the matching rank statements',
    Command.REDUCE: 'reduced graph and removal ledger',
    Command.RANDOM: 'seeded random gains for an underlying-graph edge list',
    Command.VERIFY: 'run the verification suites',
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--method', choices=[m.value for m in RankMethod], default=RankMethod.ELIMINATION.value)
    common.add_argument('--tower', choices=[t.value for t in Tower], default=Tower.EXACT.value)
    common.add_argument('--tol', type=float, help='float tower pivot tolerance')
    common.add_argument('--max-n', type=int, dest='max_n', help='largest corpus order')
    common.add_argument('--samples', type=int, help='gain samples per corpus graph')
    common.add_argument('--seed', type=int)
    common.add_argument('--gain-set', dest='gain_set', choices=[g.value for g in GainSet])
    common.add_argument('--output', choices=[o.value for o in OutputFormat], default=OutputFormat.TEXT.value)
    common.add_argument('-o', dest='output_path', metavar='PATH', help='write to PATH instead of stdout')
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='gainrank', description='rank and girth of quaternion unit gain graphs')
    subparsers = parser.add_subparsers(dest='command', required=True)
    common = _common_flags()
    for command in Command:
        sub = subparsers.add_parser(command.value, parents=[common], help=COMMAND_HELP[command])
        if command == Command.VERIFY:
            sub.add_argument('--suite', choices=[s.value for s in Suite], default=Suite.ALL.value)
        else:
            sub.add_argument('input', help='qgg v1 graph file')
    return parser


def build_run_config(args: argparse.Namespace, app_config: AppConfig) -> RunConfig:
    verification = app_config.verification
    for name in ('max_n', 'samples', 'seed', 'gain_set', 'tol'):
        value = getattr(args, name)
        if value is not None:
            setattr(verification, name, value)

    command = Command(args.command)
    return RunConfig(command, app_config,
                     inputs=[args.input] if command != Command.VERIFY else [],
                     method=RankMethod(args.method),
                     tower=Tower(args.tower),
                     output=OutputFormat(args.output),
                     output_path=args.output_path,
                     suite=Suite(args.suite) if command == Command.VERIFY else Suite.ALL)


def main(argv: Optional[List[str]] = None, config_file: str = CONFIGURATION_FILE) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = build_run_config(args, AppConfig(config_file))
        return executors[config.command](config).exec()
    except ConfigurationException as e:
        logger.error(f'configuration error: {e}')
    except (GainRankException, OSError, ValueError) as e:
        logger.error(f'{args.command} failed: {e}')
    return EXIT_USAGE
