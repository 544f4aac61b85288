"""Tests of prediction-to-instance matching."""
import itertools

import numpy as np

from poseval.enumeration import DetectionLabel, PoseErrorKind
from poseval.geom import RigidPose
from poseval.metrics import DetectionCase, GtInstance, LocalizationCase, PoseEstimate, \
    correctness, greedy_detection, greedy_localization, match_localization
from poseval.pose_error import Box2D

TP, FP, IGNORED = DetectionLabel.TRUE_POSITIVE, DetectionLabel.FALSE_POSITIVE, \
    DetectionLabel.IGNORED


def _gt(gt_id, x, visib_fract=1.0):
    return GtInstance(gt_id, 1, RigidPose(np.eye(3), (x, 0, 1000)), visib_fract,
                      Box2D(0, 0, 10, 10))


def _estimate(x, score):
    return PoseEstimate(1, 1, 1, RigidPose(np.eye(3), (x, 0, 1000)), score, 0.5)


def _distance(est, gt):
    return float(np.linalg.norm(est.pose.translation - gt.pose.translation))


def test_correctness():
    """Pose errors are strict, overlaps are inclusive."""
    assert correctness(PoseErrorKind.MSSD, 4.9, 5.0)
    assert not correctness(PoseErrorKind.MSSD, 5.0, 5.0)
    assert correctness(PoseErrorKind.VSD, 0.0, 0.05)
    assert correctness("iou", 0.5, 0.5)
    assert not correctness(PoseErrorKind.IOU2D, 0.49, 0.5)


def test_localization_examples():
    """A perfect estimate, surplus estimates and ineligible instances."""
    gts = [_gt(0, 0)]
    matches = match_localization([_estimate(0, 1.0)], gts, _distance, 5.0)
    assert [(m[1].gt_id, m[2]) for m in matches] == [(0, 0.0)]

    # only the two most confident of three estimates are considered
    gts = [_gt(0, 0), _gt(1, 100)]
    estimates = [_estimate(0, 0.9), _estimate(300, 0.8), _estimate(100, 0.1)]
    matches = match_localization(estimates, gts, _distance, 5.0)
    assert [m[0] for m in matches] == [estimates[0]]

    # an instance below the visibility threshold is never a target
    gts = [_gt(0, 0, visib_fract=0.05)]
    assert match_localization([_estimate(0, 1.0)], gts, _distance, 5.0) == []


def test_localization_is_greedy_not_optimal():
    """The greedy rule can match fewer instances than the best assignment."""
    errors = np.array([[1.0, 2.0], [1.5, 10.0]])
    scores = [0.9, 0.8]
    greedy = greedy_localization(scores, errors, 3.0)
    assert greedy == [(0, 0, 1.0)]
    best = max(sum(errors[i, j] < 3.0 for i, j in zip(range(2), perm))
               for perm in itertools.permutations(range(2)))
    assert best == 2


def test_localization_ties():
    """Equal scores are ranked by the best error, then input order."""
    errors = np.array([[7.0], [2.0], [2.0]])
    assert greedy_localization([0.5, 0.5, 0.5], errors, 5.0) == [(1, 0, 2.0)]
    # a failing smallest-error instance leaves the instance unmatched
    assert greedy_localization([1.0], np.array([[6.0, 8.0]]), 5.0) == []
    assert greedy_localization([], np.zeros((0, 2)), 5.0) == []


def test_localization_case_counts():
    """Counts are reported per (threshold, tolerance) setting, threshold-major."""
    errors = np.zeros((1, 1, 2))
    errors[0, 0] = [0.1, 0.3]
    case = LocalizationCase((1, 1), 1, [1.0], errors, [0.2, 0.4])
    assert case.num_gt == 1
    assert case.matched_counts(PoseErrorKind.VSD) == [1, 0, 1, 1]


def test_localization_case_without_estimates():
    """A case with instances but no estimates matches nothing at any threshold."""
    case = LocalizationCase((1, 0), 1, [], np.ones((0, 2, 1)), [5.0, 10.0])
    assert case.num_gt == 2
    assert case.matched_counts(PoseErrorKind.MSSD) == [0, 0]


def test_detection_labels():
    """True positives, false positives and detections of occluded instances."""
    labels = greedy_detection([0.9, 0.8], [[50.0], [1.0]], [True], 10.0, PoseErrorKind.MSSD)
    assert labels == [(0, FP), (1, TP)]
    labels = greedy_detection([0.9], [[1.0]], [False], 10.0, PoseErrorKind.MSSD)
    assert labels == [(0, IGNORED)]
    # eligible instances take precedence over ignored ones
    labels = greedy_detection([0.9, 0.8], [[1.0, 5.0], [1.0, 2.0]], [False, True], 10.0,
                              PoseErrorKind.MSSD)
    assert labels == [(0, TP), (1, IGNORED)]
    # boxes prefer the largest overlap
    labels = greedy_detection([0.7], [[0.6, 0.9]], [True, True], 0.5, PoseErrorKind.IOU2D)
    assert labels == [(0, TP)]


def test_detection_cap():
    """Only the 100 most confident detections of an image are evaluated."""
    scores = list(np.linspace(0.01, 1.0, 150))
    labels = greedy_detection(scores, np.full((150, 1), 99.0), [True], 10.0,
                              PoseErrorKind.MSSD)
    assert len(labels) == 100
    assert labels[0][0] == 149
    assert min(row for row, _ in labels) == 50


def test_detection_case():
    """Detection cases label at each resolved threshold."""
    case = DetectionCase((1, 2), 3, [0.9, 0.4], [[4.0], [12.0]], [True], [5.0, 15.0])
    assert case.num_gt == 1
    assert case.labels(0, PoseErrorKind.MSSD) == [(0.9, TP), (0.4, FP)]
    assert case.labels(1, PoseErrorKind.MSSD) == [(0.9, TP), (0.4, FP)]
    assert DetectionCase((1, 2), 3, [0.9], [[20.0]], [True], [5.0]).labels(
        0, PoseErrorKind.MSSD) == [(0.9, FP)]


def test_monotone_score_transform():
    """Only the order of scores matters."""
    rng = np.random.default_rng(8)
    for _ in range(100):
        scores = rng.uniform(size=5)
        errors = rng.uniform(0, 20, size=(5, 3))
        eligible = rng.uniform(size=3) > 0.3
        squashed = np.exp(3 * scores) + 7
        assert greedy_detection(scores, errors, eligible, 10.0, PoseErrorKind.MSPD) == \
            greedy_detection(squashed, errors, eligible, 10.0, PoseErrorKind.MSPD)
        assert greedy_localization(scores, errors, 10.0) == \
            greedy_localization(squashed, errors, 10.0)
