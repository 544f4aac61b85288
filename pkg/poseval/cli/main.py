"""
The ``poseval`` command.

Exit codes: 0 on success, 1 when a file cannot be read or written, 2 when an input is
invalid (or, for ``validate``, when any problem is found).
"""
import argparse
import logging
import sys
from logging import getLogger
from pathlib import Path
from typing import List, Optional

from poseval.cli.commands import cmd_eval, cmd_fixtures, cmd_report, cmd_validate
from poseval.cli.config import EvalConfig
from poseval.enumeration import Task
from poseval.evaluation import JOBS_VARIABLE
from poseval.exceptions import ConfigError, ValidationError
from poseval.io import parse_json_object, read_file

logger = getLogger(__name__)

TASKS = [task.value for task in Task]
LOG_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("{!r} is not an integer".format(text))
    if value < 1:
        raise argparse.ArgumentTypeError("{} is not positive".format(value))
    return value


def build_parser() -> argparse.ArgumentParser:
    """The argument parser of every subcommand."""
    parser = argparse.ArgumentParser(
        prog="poseval", description="Score 6D object pose and 2D detection submissions.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress (-v) or debug details (-vv) to stderr")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    evaluate = commands.add_parser("eval", help="score a submission")
    evaluate.add_argument("--config", help="an eval_config JSON file replacing the options")
    evaluate.add_argument("--task", choices=TASKS)
    evaluate.add_argument("--dataset", action="append", default=[],
                          help="dataset directory; repeat for several datasets")
    evaluate.add_argument("--targets", action="append", default=[],
                          help="target list of the matching dataset "
                               "(default <dataset>/test_targets.json)")
    evaluate.add_argument("--submission", action="append", default=[],
                          help="submission CSV of the matching dataset")
    evaluate.add_argument("--out", help="directory for the reports")
    evaluate.add_argument("--format", default="json,csv",
                          help="comma-separated report formats (json, csv)")
    evaluate.add_argument("--jobs", type=_positive,
                          help="worker threads (default ${} or 1)".format(JOBS_VARIABLE))
    evaluate.add_argument("--grid", help="threshold-grid override file")
    evaluate.set_defaults(handler=_eval)

    validate = commands.add_parser("validate", help="check a submission file")
    validate.add_argument("submission")
    validate.add_argument("--task", choices=TASKS, required=True)
    validate.add_argument("--targets", help="target list to check coverage against")
    validate.add_argument("--dataset", help="dataset directory to check object ids against")
    validate.set_defaults(handler=_validate)

    fixtures = commands.add_parser("fixtures", help="write the synthetic fixture dataset")
    fixtures.add_argument("--seed", type=int, default=0)
    fixtures.add_argument("--out", required=True)
    fixtures.set_defaults(handler=_fixtures)

    report = commands.add_parser("report", help="print a stored report")
    report.add_argument("report")
    report.add_argument("--plots", action="store_true",
                        help="write one SVG per precision/recall curve")
    report.add_argument("--plot-dir", help="where to write plots (default <report dir>/plots)")
    report.set_defaults(handler=_report)
    return parser


def _eval_config(args) -> EvalConfig:
    if args.config is not None:
        data = read_file(Path(args.config), parse_json_object)
        try:
            config = EvalConfig.from_dict(data)
        except TypeError as err:
            raise ConfigError("Incomplete eval_config: {}".format(err)).located(args.config)
        except ConfigError as err:
            raise err.located(args.config)
        if args.jobs is not None:
            config.jobs = args.jobs
        return config
    if args.task is None or args.out is None:
        raise ConfigError("eval needs --task and --out, or --config")
    return EvalConfig(args.task, args.dataset, args.submission, args.out,
                      targets=args.targets, formats=args.format, jobs=args.jobs,
                      grid=args.grid)


def _eval(args) -> int:
    cmd_eval(_eval_config(args))
    return 0


def _validate(args) -> int:
    return cmd_validate(args.submission, args.task, args.targets, args.dataset)


def _fixtures(args) -> int:
    cmd_fixtures(args.seed, args.out)
    return 0


def _report(args) -> int:
    cmd_report(args.report, args.plots, args.plot_dir)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line; returns the exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=LOG_LEVELS.get(args.verbose, logging.DEBUG),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.handler(args)
    except ValidationError as err:
        print("error: {}".format(err), file=sys.stderr)
        return 2
    except OSError as err:
        print("error: {}".format(err), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
