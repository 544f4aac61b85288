"""Score report files."""
import csv
import io

from poseval import json as pose_json
from poseval.exceptions import ValidationError
from poseval.metrics.score_report import ScoreReport, percent_1dp

FORMATS = ("json", "csv")
CSV_HEADER = ("dataset", "kind", "score", "percent_1dp", "num_gt", "num_images", "mean_time")


def _optional(value) -> str:
    return "" if value is None else repr(value)


def _csv(report: ScoreReport) -> str:
    buffer = io.StringIO(newline="")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for dataset in report.datasets:
        for kind in sorted(dataset.scores):
            value = dataset.scores[kind]
            writer.writerow([dataset.name, kind, repr(value), percent_1dp(value),
                             dataset.num_gt, dataset.num_images, ""])
        writer.writerow([dataset.name, report.score_name, repr(dataset.score),
                         percent_1dp(dataset.score), dataset.num_gt, dataset.num_images,
                         _optional(dataset.mean_time)])
    writer.writerow(["overall", report.score_name, repr(report.score),
                     percent_1dp(report.score), sum(d.num_gt for d in report.datasets),
                     sum(d.num_images for d in report.datasets), _optional(report.mean_time)])
    return buffer.getvalue()


def write_report(report: ScoreReport, fmt: str = "json") -> bytes:
    """
    Serialize a report deterministically.

    Parameters
    ----------
    report: ScoreReport
        The report.
    fmt: str
        ``"json"`` for the full report (sorted keys, shortest round-trip floats) or
        ``"csv"`` for one row per dataset and pose-error function plus an overall row.

    """
    if fmt == "json":
        return (pose_json.dumps(report, indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        return _csv(report).encode("utf-8")
    raise ValidationError("Unknown report format {!r}; expected one of {}".format(fmt, FORMATS))


def parse_report(data: bytes) -> ScoreReport:
    """Read back a report written by `write_report` in JSON."""
    try:
        report = pose_json.loads(data.decode("utf-8"))
    except ValueError as err:
        raise ValidationError("Report is not valid JSON: {}".format(err))
    if not isinstance(report, ScoreReport):
        raise ValidationError("File does not hold a score report")
    return report
