"""The work behind each command-line subcommand."""
import sys
from collections import Counter
from logging import getLogger
from pathlib import Path
from typing import List, Optional, Sequence, TextIO

from poseval.cli.config import EvalConfig
from poseval.cli.plots import write_curve_plots
from poseval.demo import make_fixture_dataset
from poseval.enumeration import Task
from poseval.evaluation import evaluate
from poseval.exceptions import MissingReport, SubmissionErrors, ValidationError
from poseval.io import BopDataset, parse_report, parse_submission_csv, parse_targets, read_file, \
    write_report
from poseval.metrics import MAX_DETECTIONS, PoseEstimate, ScoreReport, TargetList, percent_1dp

logger = getLogger(__name__)

REPORT_NAME = "scores"


def format_table(report: ScoreReport) -> str:
    """A fixed-width table of the per-dataset scores, percentages rounded to one decimal."""
    kinds = report.task.error_kinds
    header = ["dataset", report.score_name] + [k.value for k in kinds] + ["images", "time"]
    rows = [header]
    for dataset in report.datasets:
        rows.append([dataset.name, percent_1dp(dataset.score)]
                    + [percent_1dp(dataset.scores[k.value]) for k in kinds]
                    + [str(dataset.num_images), _time(dataset.mean_time)])
    rows.append(["overall", percent_1dp(report.score)] + [""] * len(kinds)
                + [str(sum(d.num_images for d in report.datasets)), _time(report.mean_time)])
    widths = [max(len(row[c]) for row in rows) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
             for row in rows]
    return "\n".join(lines) + "\n"


def _time(value: Optional[float]) -> str:
    return "-" if value is None else "{:.3f}".format(value)


def cmd_eval(config: EvalConfig, out: Optional[TextIO] = None) -> ScoreReport:
    """
    Score a submission and write its reports.

    Only the images named by each target list are evaluated.  Reports are written to
    ``<output>/scores.<format>`` and a summary table is printed.

    Raises
    ------
    ValidationError
        If any input file is invalid; submission problems are reported per line.
    OSError
        If a file cannot be read or written.

    """
    out = out or sys.stdout
    settings = config.to_settings()
    runs = []
    for dataset_dir, targets_path, submission_path in config.runs():
        dataset = BopDataset(dataset_dir)
        targets = read_file(targets_path, parse_targets)
        predictions = read_file(submission_path,
                                lambda data: parse_submission_csv(data, config.task))
        logger.info("Read {} prediction(s) from {}".format(len(predictions), submission_path))
        runs.append((dataset, targets, predictions))

    report = evaluate(config.task, runs, settings)
    output = Path(config.output)
    output.mkdir(parents=True, exist_ok=True)
    for fmt in config.formats:
        path = output / "{}.{}".format(REPORT_NAME, fmt)
        path.write_bytes(write_report(report, fmt))
        logger.info("Wrote {}".format(path))
    out.write(format_table(report))
    return report


def validate_submission(predictions: Sequence, task: Task,
                        targets: Optional[TargetList] = None,
                        dataset: Optional[BopDataset] = None) -> List[str]:
    """
    Check a parsed submission against the evaluation rules.

    Parameters
    ----------
    predictions: Sequence
        The parsed rows.
    task: Task
        The task the submission is for.
    targets: TargetList, optional
        When given, images missing from the submission and rows outside the targets
        are reported.
    dataset: BopDataset, optional
        When given, rows for objects the dataset does not define are reported.

    Returns
    -------
    List[str]
        One message per problem; empty for a clean submission.

    """
    problems = []
    per_image = Counter(p.image for p in predictions)
    for (scene_id, im_id), count in sorted(per_image.items()):
        if count > MAX_DETECTIONS:
            problems.append(
                "warning: {} rows for image {} of scene {}; only the {} most confident are "
                "evaluated".format(count, im_id, scene_id, MAX_DETECTIONS))

    duplicates = Counter(_row_key(p) for p in predictions)
    for key, count in sorted(duplicates.items()):
        if count > 1:
            problems.append("warning: {} identical rows for object {} in image {} of scene {}"
                            .format(count, key[2], key[1], key[0]))

    if dataset is not None:
        known = set(dataset.models_info)
        for obj_id in sorted({p.obj_id for p in predictions} - known):
            problems.append("error: object {} is not defined by dataset {}".format(
                obj_id, dataset.name))

    if targets is not None:
        submitted = {p.image for p in predictions}
        for scene_id, im_id in targets.images():
            if (scene_id, im_id) not in submitted:
                problems.append("warning: no rows for targeted image {} of scene {}".format(
                    im_id, scene_id))
        outside = sorted({p.image for p in predictions if p.image not in targets})
        for scene_id, im_id in outside:
            problems.append("warning: image {} of scene {} is not a target".format(
                im_id, scene_id))
    logger.debug("Validated {} {} row(s): {} problem(s)".format(
        len(predictions), task.value, len(problems)))
    return problems


def _row_key(prediction) -> tuple:
    if isinstance(prediction, PoseEstimate):
        shape = tuple(prediction.pose.rotation.ravel().tolist()) \
            + tuple(prediction.pose.translation.tolist())
    else:
        box = prediction.bbox
        shape = (box.x, box.y, box.w, box.h)
    return (prediction.scene_id, prediction.im_id, prediction.obj_id, prediction.score) + shape


def cmd_validate(submission, task, targets=None, dataset=None,
                 out: Optional[TextIO] = None) -> int:
    """
    Validate a submission file and print every problem found.

    Returns
    -------
    int
        0 for a clean file, 2 if any error or warning was printed.

    """
    out = out or sys.stdout
    task = Task.get_enum(task)
    try:
        predictions = read_file(Path(submission),
                                lambda data: parse_submission_csv(data, task))
    except SubmissionErrors as err:
        for problem in err.problems:
            out.write("error: {}\n".format(problem))
        return 2
    except ValidationError as err:
        out.write("error: {}\n".format(err))
        return 2
    target_list = read_file(Path(targets), parse_targets) if targets is not None else None
    bop = BopDataset(dataset) if dataset is not None else None
    problems = validate_submission(predictions, task, target_list, bop)
    for problem in problems:
        out.write("{}\n".format(problem))
    if problems:
        return 2
    out.write("{}: {} valid {} row(s)\n".format(submission, len(predictions), task.value))
    return 0


def cmd_fixtures(seed: int, out_dir, out: Optional[TextIO] = None) -> Path:
    """Write the seeded fixture dataset under `out_dir` and print its location."""
    out = out or sys.stdout
    root = make_fixture_dataset(seed, out_dir)
    out.write("{}\n".format(root))
    return root


def cmd_report(path, plots: bool = False, plot_dir=None,
               out: Optional[TextIO] = None) -> ScoreReport:
    """
    Print a stored report and optionally plot its precision/recall curves.

    Plots go to `plot_dir`, by default a ``plots`` directory next to the report.

    Raises
    ------
    MissingReport
        If `path` does not exist.

    """
    out = out or sys.stdout
    path = Path(path)
    if not path.is_file():
        raise MissingReport("No report at {}".format(path))
    report = read_file(path, parse_report)
    out.write(format_table(report))
    if plots:
        target = Path(plot_dir) if plot_dir is not None else path.parent / "plots"
        written = write_curve_plots(report, target)
        out.write("{} plot(s) in {}\n".format(len(written), target))
    return report
