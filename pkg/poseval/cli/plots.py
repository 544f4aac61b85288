"""Precision/recall curve plots as standalone SVG files."""
import io
from logging import getLogger
from pathlib import Path
from typing import List

import matplotlib
from matplotlib.figure import Figure

from poseval.enumeration import PoseErrorKind
from poseval.metrics.score_report import CurveRecord, ScoreReport, percent_1dp

logger = getLogger(__name__)

# Fixed ids and no timestamp make the output byte-identical between runs.
SVG_STYLE = {
    "svg.hashsalt": "poseval",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": 10.0,
}
FIGURE_SIZE = (4.0, 4.0)
CURVE_ID = "pr-curve"


def curve_file_name(dataset: str, curve: CurveRecord) -> str:
    """File name of the plot of one curve."""
    return "{}-{}-obj{:06d}-{!r}.svg".format(dataset, curve.kind, curve.obj_id, curve.threshold)


def render_curve_svg(curve: CurveRecord, title: str = "") -> bytes:
    """
    Draw one precision/recall curve.

    A curve without points is drawn as empty axes.

    Parameters
    ----------
    curve: CurveRecord
        The curve.
    title: str
        Prefix of the plot title; the threshold and AP are appended.

    Returns
    -------
    bytes
        A self-contained SVG document.

    """
    with matplotlib.rc_context(SVG_STYLE):
        figure = Figure(figsize=FIGURE_SIZE)
        axes = figure.add_subplot(1, 1, 1)
        if curve.recalls:
            axes.plot(curve.recalls, curve.precisions, color="tab:blue", linewidth=1.5,
                      drawstyle="steps-post", gid=CURVE_ID)
        axes.set_xlim(0.0, 1.0)
        axes.set_ylim(0.0, 1.05)
        axes.set_xlabel("Recall")
        axes.set_ylabel("Precision")
        relation = ">=" if curve.kind == PoseErrorKind.IOU2D.value else "<"
        axes.set_title("{}{} {} {!r}: AP {}".format(
            title, curve.kind, relation, curve.threshold, percent_1dp(curve.ap)))
        axes.grid(True, linewidth=0.5)
        buffer = io.BytesIO()
        figure.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def write_curve_plots(report: ScoreReport, out_dir) -> List[Path]:
    """Write one SVG per curve of the report; returns the written files in report order."""
    out_dir = Path(out_dir)
    written = []
    for dataset in report.datasets:
        if not dataset.curves:
            continue
        out_dir.mkdir(parents=True, exist_ok=True)
        for curve in dataset.curves:
            path = out_dir / curve_file_name(dataset.name, curve)
            path.write_bytes(render_curve_svg(
                curve, "{} obj {}, ".format(dataset.name, curve.obj_id)))
            written.append(path)
    logger.info("Wrote {} curve plot(s) to {}".format(len(written), out_dir))
    return written
