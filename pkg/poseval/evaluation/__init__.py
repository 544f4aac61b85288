"""Scoring of submissions against datasets."""
# flake8: noqa
from .settings import EvalSettings, default_jobs, JOBS_VARIABLE
from .pipeline import evaluate, evaluate_dataset, evaluate_localization, \
    evaluate_detection_6d, evaluate_detection_2d
