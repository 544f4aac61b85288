"""Tests of average recall and run-time averaging."""
import pytest

from poseval.exceptions import EmptyGroundTruth, EmptyInput
from poseval.metrics import ar_dataset, ar_overall, average_recall, dataset_time, image_times, \
    mean_image_time, round_half_up


def test_average_recall():
    """Perfect, empty and half-matched submissions."""
    assert average_recall([10] * 10, 10) == 1.0
    assert average_recall([0] * 10, 10) == 0.0
    assert average_recall([1] * 10, 2) == 0.5
    assert average_recall([2, 1, 0, 1], 2) == 0.5
    with pytest.raises(EmptyGroundTruth):
        average_recall([0, 0], 0)


def test_ar_dataset():
    """AR_d is the mean of the three pose-error ARs."""
    assert ar_dataset(1, 1, 1) == 1
    assert ar_dataset(0.6, 0.9, 0.9) == pytest.approx(0.8)
    assert ar_dataset(0, 0, 0) == 0


def test_ar_overall():
    """The overall AR reproduces published table rows after rounding."""
    assert round_half_up(ar_overall([77.1, 75.5, 97.6, 69.7, 74.2, 89.2, 91.5])) == "82.1"
    assert round_half_up(ar_overall([63.5, 52.1, 86.2, 53.4, 55.4, 77.9, 83.3])) == "67.4"
    assert ar_overall([0.25]) == 0.25
    assert ar_overall([0, 100]) == 50
    assert ar_overall([0.1, 0.7, 0.4]) == ar_overall([0.4, 0.1, 0.7])
    with pytest.raises(EmptyInput):
        ar_overall([])


def test_times():
    """Image times take the largest row; means go per dataset, then over datasets."""
    rows = [((1, 1), 1.0), ((1, 2), 1.0), ((1, 1), 1.0)]
    assert mean_image_time([image_times(rows)]) == 1.0
    assert image_times([((1, 1), 0.8), ((1, 1), 1.2)]) == {(1, 1): 1.2}
    assert mean_image_time([{(1, 1): 2.0}, {(1, 1): 3.0, (1, 2): 5.0}]) == 3.0
    assert dataset_time({(1, 1): 1.0, (2, 1): 2.0}) == 1.5
    with pytest.raises(EmptyInput):
        mean_image_time([])
