"""Precision/recall curves and average precision."""
import math
from itertools import chain
from typing import List, Sequence, Tuple

import numpy as np

from poseval.enumeration import DetectionLabel, PoseErrorKind
from poseval.exceptions import EmptyInput
from poseval.metrics.matching import DetectionCase

# Recall levels of the 101-point interpolation.
RECALL_LEVELS = np.linspace(0.0, 1.0, 101)


class PRCurve(object):
    """
    Precision after each counted detection of a confidence-ordered sweep.

    Parameters
    ----------
    recalls, precisions: Sequence[float]
        One point per counted detection; recall is non-decreasing.
    num_tp, num_fp: int
        True and false positives counted by the sweep.
    num_gt: int
        Eligible ground-truth instances, the recall denominator.

    """

    __slots__ = ("recalls", "precisions", "num_tp", "num_fp", "num_gt")

    def __init__(self, recalls: Sequence[float], precisions: Sequence[float], num_tp: int,
                 num_fp: int, num_gt: int):
        self.recalls = np.asarray(recalls, dtype=np.float64)
        self.precisions = np.asarray(precisions, dtype=np.float64)
        self.num_tp = num_tp
        self.num_fp = num_fp
        self.num_gt = num_gt

    @property
    def points(self) -> List[Tuple[float, float]]:
        """The (recall, precision) pairs in sweep order."""
        return list(zip(self.recalls.tolist(), self.precisions.tolist()))

    def __len__(self):
        return len(self.recalls)

    def __repr__(self):
        return "PRCurve({} points, tp={}, fp={}, gt={})".format(
            len(self), self.num_tp, self.num_fp, self.num_gt)


def sweep(labeled: Sequence[Tuple[float, DetectionLabel]], num_gt: int) -> PRCurve:
    """
    Turn labeled detections into a curve.

    Detections are visited by descending score; ties keep their order in `labeled`.
    Ignored detections are skipped.
    """
    order = sorted(range(len(labeled)), key=lambda k: -labeled[k][0])
    tp = fp = 0
    recalls, precisions = [], []
    for k in order:
        label = labeled[k][1]
        if label is DetectionLabel.IGNORED:
            continue
        if label is DetectionLabel.TRUE_POSITIVE:
            tp += 1
        else:
            fp += 1
        recalls.append(tp / num_gt if num_gt else 0.0)
        precisions.append(tp / (tp + fp))
    return PRCurve(recalls, precisions, tp, fp, num_gt)


def build_pr_curve(cases: Sequence[DetectionCase], threshold_index: int,
                   kind: PoseErrorKind) -> PRCurve:
    """
    The curve of one object at one threshold of its grid.

    Parameters
    ----------
    cases: Sequence[DetectionCase]
        Every (image, object) case of the object in the dataset, in a fixed order.
    threshold_index: int
        Position of the threshold in each case's resolved grid.
    kind: PoseErrorKind
        The function that produced the case errors.

    Returns
    -------
    PRCurve
        The swept curve; its recall counts eligible instances only.

    """
    labeled = list(chain.from_iterable(case.labels(threshold_index, kind) for case in cases))
    return sweep(labeled, sum(case.num_gt for case in cases))


def ap_from_curve(curve: PRCurve) -> float:
    """
    101-point interpolated average precision.

    At every recall level ``r`` in ``0, 0.01, ..., 1`` the precision is the largest
    precision reached at a recall ``>= r`` (0 if none), and those values are averaged.
    """
    if len(curve) == 0:
        return 0.0
    envelope = np.maximum.accumulate(curve.precisions[::-1])[::-1]
    index = np.searchsorted(curve.recalls, RECALL_LEVELS, side="left")
    reached = index < len(envelope)
    values = np.zeros(len(RECALL_LEVELS))
    values[reached] = envelope[index[reached]]
    return math.fsum(values) / len(RECALL_LEVELS)


def _mean(values: Sequence[float], what: str) -> float:
    values = list(values)
    if not values:
        raise EmptyInput("Cannot average an empty list of {}".format(what))
    return math.fsum(values) / len(values)


def ap_object(aps: Sequence[float]) -> float:
    """AP of one object: the mean over the thresholds of its grid."""
    return _mean(aps, "per-threshold APs")


def ap_dataset(per_object: Sequence[float]) -> float:
    """AP of one dataset: the mean over its objects."""
    return _mean(per_object, "per-object APs")


def ap_dataset_6d(ap_mssd: float, ap_mspd: float) -> float:
    """6D detection AP of one dataset: the mean of the MSSD and MSPD APs."""
    return _mean([ap_mssd, ap_mspd], "APs")


def ap_overall(per_dataset: Sequence[float]) -> float:
    """The headline AP: the mean over datasets."""
    return _mean(per_dataset, "per-dataset APs")
