"""
Matching of predictions to ground-truth instances.

Matching works on precomputed error matrices (one row per prediction, one column per
ground-truth instance) so that every threshold of a grid reuses the same errors.
"""
from logging import getLogger
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from poseval.enumeration import DetectionLabel, PoseErrorKind
from poseval.exceptions import ValidationError

logger = getLogger(__name__)

# At most this many detections per image are evaluated.
MAX_DETECTIONS = 100


def correctness(kind: PoseErrorKind, error_value: float, theta: float) -> bool:
    """
    Whether a prediction with `error_value` is correct at threshold `theta`.

    Pose errors are correct strictly below the threshold; a box overlap is correct at or
    above it.
    """
    if PoseErrorKind.get_enum(kind).higher_is_better:
        return error_value >= theta
    return error_value < theta


def _cost(kind: PoseErrorKind, value: float) -> float:
    return -value if kind.higher_is_better else value


def _best(errors: np.ndarray, row: int, candidates: Sequence[int], kind: PoseErrorKind,
          theta: Optional[float] = None) -> Optional[int]:
    """The candidate column with the best error, optionally among correct ones only."""
    best = None
    for col in candidates:
        value = errors[row, col]
        if theta is not None and not correctness(kind, value, theta):
            continue
        if best is None or _cost(kind, value) < _cost(kind, errors[row, best]):
            best = col
    return best


def greedy_localization(scores: Sequence[float], errors: np.ndarray, theta: float,
                        kind: PoseErrorKind = PoseErrorKind.MSSD
                        ) -> List[Tuple[int, int, float]]:
    """
    Match localization estimates of one object in one image.

    Only the ``n`` best estimates are kept, ``n`` being the number of instances (columns);
    they are ranked by descending score, then by their best error, then by input order.
    In that order every estimate takes the unmatched instance with the best error, and the
    pair counts only if it is correct at `theta`.

    Parameters
    ----------
    scores: Sequence[float]
        Confidence of each estimate.
    errors: np.ndarray
        n_estimates x n_instances errors.
    theta: float
        Absolute correctness threshold.
    kind: PoseErrorKind
        The function that produced `errors`.

    Returns
    -------
    List[Tuple[int, int, float]]
        ``(estimate index, instance index, error)`` of every correct match.

    """
    if len(scores) == 0:
        return []
    errors = np.asarray(errors, dtype=np.float64).reshape(len(scores), -1)
    n_gt = errors.shape[1]
    if n_gt == 0:
        return []
    best_errors = [min(_cost(kind, e) for e in row) for row in errors]
    ranked = sorted(range(len(scores)), key=lambda i: (-scores[i], best_errors[i], i))

    unmatched = list(range(n_gt))
    matches = []
    for row in ranked[:n_gt]:
        col = _best(errors, row, unmatched, kind)
        if correctness(kind, errors[row, col], theta):
            unmatched.remove(col)
            matches.append((row, col, float(errors[row, col])))
    return matches


def match_localization(estimates: Sequence, gts: Sequence, error_fn: Callable, theta: float,
                       kind: PoseErrorKind = PoseErrorKind.MSSD) -> List[Tuple]:
    """
    Match the estimates of one (image, object) pair to its ground-truth instances.

    Instances below the visibility threshold are dropped before matching.

    Parameters
    ----------
    estimates: Sequence[PoseEstimate]
        Estimates sharing one scene, image and object.
    gts: Sequence[GtInstance]
        Instances of that object in that image.
    error_fn: Callable[[PoseEstimate, GtInstance], float]
        The pose-error function.
    theta: float
        Absolute correctness threshold.
    kind: PoseErrorKind
        The function `error_fn` computes.

    Returns
    -------
    List[Tuple[PoseEstimate, GtInstance, float]]
        The correct matches, in matching order.

    """
    gts = [gt for gt in gts if gt.eligible]
    errors = np.array([[error_fn(est, gt) for gt in gts] for est in estimates],
                      dtype=np.float64).reshape(len(estimates), len(gts))
    matches = greedy_localization([est.score for est in estimates], errors, theta, kind)
    return [(estimates[row], gts[col], error) for row, col, error in matches]


def greedy_detection(scores: Sequence[float], errors: np.ndarray, eligible: Sequence[bool],
                     theta: float, kind: PoseErrorKind,
                     max_detections: int = MAX_DETECTIONS) -> List[Tuple[int, DetectionLabel]]:
    """
    Label the detections of one object in one image.

    Detections are processed by descending score (input order on ties), at most
    `max_detections` of them.  Each takes the best correct unmatched eligible instance and
    is a true positive; failing that, the best correct unmatched ineligible instance, and
    is ignored; failing both, it is a false positive.  Every instance is matched at most
    once.

    Returns
    -------
    List[Tuple[int, DetectionLabel]]
        ``(detection index, label)`` in processing order.

    """
    errors = np.asarray(errors, dtype=np.float64).reshape(len(scores), len(eligible))
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    if len(order) > max_detections:
        logger.debug("Evaluating the {} most confident of {} detections".format(
            max_detections, len(order)))
        order = order[:max_detections]
    matched = [False] * len(eligible)
    labels = []
    for row in order:
        col = _best(errors, row, [j for j, m in enumerate(matched) if not m and eligible[j]],
                    kind, theta)
        label = DetectionLabel.TRUE_POSITIVE
        if col is None:
            col = _best(errors, row,
                        [j for j, m in enumerate(matched) if not m and not eligible[j]],
                        kind, theta)
            label = DetectionLabel.IGNORED
        if col is None:
            label = DetectionLabel.FALSE_POSITIVE
        else:
            matched[col] = True
        labels.append((row, label))
    return labels


class LocalizationCase(object):
    """
    The estimates of one object in one image, scored against its eligible instances.

    Parameters
    ----------
    image: Tuple[int, int]
        (scene_id, im_id).
    obj_id: int
        The object.
    scores: Sequence[float]
        Estimate confidences.
    errors: np.ndarray
        n_estimates x n_instances x n_tolerances errors; the last axis has length 1 for
        functions without tolerances.
    thresholds: Sequence[float]
        Absolute thresholds resolved for this object and image.

    """

    __slots__ = ("image", "obj_id", "scores", "errors", "thresholds")

    def __init__(self, image, obj_id: int, scores: Sequence[float], errors,
                 thresholds: Sequence[float]):
        errors = np.asarray(errors, dtype=np.float64)
        if errors.ndim == 2:
            errors = errors[:, :, None]
        if errors.ndim != 3 or errors.shape[0] != len(scores):
            raise ValidationError("Error array of shape {} does not fit {} estimates".format(
                errors.shape, len(scores)))
        self.image = tuple(image)
        self.obj_id = obj_id
        self.scores = list(scores)
        self.errors = errors
        self.thresholds = list(thresholds)

    @property
    def num_gt(self) -> int:
        """Number of eligible instances."""
        return self.errors.shape[1]

    def matched_counts(self, kind: PoseErrorKind) -> List[int]:
        """Correctly matched instances per (threshold, tolerance) setting, threshold-major."""
        return [len(greedy_localization(self.scores, self.errors[:, :, t], theta, kind))
                for theta in self.thresholds for t in range(self.errors.shape[2])]


class DetectionCase(object):
    """
    The detections of one object in one image, scored against all its instances.

    Parameters
    ----------
    image: Tuple[int, int]
        (scene_id, im_id).
    obj_id: int
        The object.
    scores: Sequence[float]
        Detection confidences.
    errors: np.ndarray
        n_detections x n_instances errors (or IoUs).
    eligible: Sequence[bool]
        Per instance, whether it is visible enough to be evaluated.
    thresholds: Sequence[float]
        Absolute thresholds resolved for this object and image.

    """

    __slots__ = ("image", "obj_id", "scores", "errors", "eligible", "thresholds")

    def __init__(self, image, obj_id: int, scores: Sequence[float], errors,
                 eligible: Sequence[bool], thresholds: Sequence[float]):
        self.image = tuple(image)
        self.obj_id = obj_id
        self.scores = list(scores)
        self.eligible = [bool(e) for e in eligible]
        self.errors = np.asarray(errors, dtype=np.float64).reshape(
            len(self.scores), len(self.eligible))
        self.thresholds = list(thresholds)

    @property
    def num_gt(self) -> int:
        """Number of eligible instances."""
        return sum(self.eligible)

    def labels(self, threshold_index: int,
               kind: PoseErrorKind) -> List[Tuple[float, DetectionLabel]]:
        """``(score, label)`` of the evaluated detections at one threshold, in processing order."""
        labeled = greedy_detection(self.scores, self.errors, self.eligible,
                                   self.thresholds[threshold_index], kind)
        return [(self.scores[row], label) for row, label in labeled]
