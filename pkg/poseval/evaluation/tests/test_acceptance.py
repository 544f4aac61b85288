"""End-to-end scores of the reference submissions on the fixture dataset."""
import pytest

from poseval.demo import make_fixture_dataset
from poseval.enumeration import PoseErrorKind, Task
from poseval.evaluation import EvalSettings, evaluate
from poseval.io import BopDataset, parse_submission_csv, parse_targets, write_report


@pytest.fixture(scope="module")
def fixture_root(tmp_path_factory):
    """The fixture dataset, written once for this module."""
    return make_fixture_dataset(2024, tmp_path_factory.mktemp("data"))


def _score(root, task, submission, jobs=1):
    dataset = BopDataset(root)
    targets = parse_targets((root / "test_targets.json").read_bytes())
    rows = parse_submission_csv((root / "submissions" / submission).read_bytes(), task)
    return evaluate(task, [(dataset, targets, rows)], EvalSettings(jobs=jobs))


def test_perfect_localization(fixture_root):
    """Ground-truth poses reach an average recall of exactly one."""
    report = _score(fixture_root, Task.LOCALIZATION_6D, "perfect-poses.csv")
    assert report.score == 1.0
    assert report.datasets[0].scores == {"vsd": 1.0, "mssd": 1.0, "mspd": 1.0}
    assert report.summary() == {"fixture": "100.0", "overall": "100.0"}
    assert report.mean_time is not None


def test_perfect_detection(fixture_root):
    """Ground-truth poses and boxes reach an average precision of exactly one."""
    assert _score(fixture_root, Task.DETECTION_6D, "perfect-poses.csv").score == 1.0
    assert _score(fixture_root, Task.DETECTION_2D, "perfect-boxes.csv").score == 1.0


def test_perturbed_mssd(fixture_root):
    """Shifts of 0.30 d are correct at 4 of the 10 MSSD thresholds."""
    report = _score(fixture_root, Task.LOCALIZATION_6D, "perturbed-poses.csv")
    assert report.datasets[0].scores[PoseErrorKind.MSSD.value] == 0.4
    assert report.score < 1.0


@pytest.mark.parametrize("task, submission", [
    (Task.LOCALIZATION_6D, "perturbed-poses.csv"),
    (Task.DETECTION_6D, "perturbed-poses.csv"),
    (Task.DETECTION_2D, "perfect-boxes.csv"),
])
def test_parallelism_does_not_change_reports(fixture_root, task, submission):
    """One and eight workers write byte-identical reports."""
    single = _score(fixture_root, task, submission, jobs=1)
    parallel = _score(fixture_root, task, submission, jobs=8)
    assert write_report(single, "json") == write_report(parallel, "json")
    assert write_report(single, "csv") == write_report(parallel, "csv")
