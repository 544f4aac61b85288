# flake8: noqa
from .pose_error_kind import PoseErrorKind
from .task import Task
from .detection_label import DetectionLabel
