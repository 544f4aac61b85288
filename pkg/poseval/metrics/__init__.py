"""Matching of predictions to ground truth and the AR/AP aggregation."""
# flake8: noqa
from .instances import GtInstance, PoseEstimate, Detection2D, TargetList, VISIBILITY_THRESHOLD
from .threshold_grid import ThresholdGrid, default_grid
from .matching import correctness, match_localization, greedy_localization, greedy_detection, \
    LocalizationCase, DetectionCase, MAX_DETECTIONS
from .recall import average_recall, ar_dataset, ar_overall
from .precision import PRCurve, build_pr_curve, sweep, ap_from_curve, ap_object, ap_dataset, \
    ap_dataset_6d, ap_overall
from .timing import image_times, dataset_time, mean_image_time
from .score_report import ScoreReport, DatasetScore, CurveRecord, percent_1dp, round_half_up
