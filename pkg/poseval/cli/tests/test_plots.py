"""Tests of curve plots."""
from poseval.cli.plots import CURVE_ID, curve_file_name, render_curve_svg, write_curve_plots
from poseval.enumeration import Task
from poseval.metrics import CurveRecord, DatasetScore, ScoreReport

CURVE = CurveRecord("mssd", 7, 0.25, [0.25, 0.5, 0.5, 1.0], [1.0, 1.0, 2 / 3, 0.8], 0.8)


def test_deterministic():
    """Rendering a curve twice gives the same bytes and no timestamp."""
    first = render_curve_svg(CURVE, "lm obj 7, ")
    assert first == render_curve_svg(CURVE, "lm obj 7, ")
    assert first.lstrip().startswith(b"<?xml")
    assert b"<svg" in first
    assert b"dc:date" not in first
    assert 'id="{}"'.format(CURVE_ID).encode() in first
    assert b"AP 80.0" in first


def test_empty_curve():
    """A curve without points draws the axes only."""
    empty = render_curve_svg(CurveRecord("iou", 1, 0.5, [], [], 0.0))
    assert b"<svg" in empty
    assert b"Recall" in empty
    assert 'id="{}"'.format(CURVE_ID).encode() not in empty


def test_write_plots(tmp_path):
    """One file per curve; datasets without curves write nothing."""
    scored = DatasetScore("lm", "det6d", {"mssd": 0.8, "mspd": 0.8}, 0.8, num_gt=4,
                          num_images=1, curves=[CURVE])
    bare = DatasetScore("tless", "det6d", {"mssd": 0.5, "mspd": 0.5}, 0.5, num_gt=2,
                        num_images=1)
    report = ScoreReport.build(Task.DETECTION_6D, [scored, bare])
    written = write_curve_plots(report, tmp_path / "plots")
    assert written == [tmp_path / "plots" / "lm-mssd-obj000007-0.25.svg"]
    assert curve_file_name("lm", CURVE) == written[0].name
    assert written[0].read_bytes() == render_curve_svg(CURVE, "lm obj 7, ")
