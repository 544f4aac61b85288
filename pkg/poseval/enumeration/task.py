"""Benchmark tasks."""
from typing import Tuple

from poseval.enumeration.base_enumeration import BaseEnumeration
from poseval.enumeration.pose_error_kind import PoseErrorKind


class Task(BaseEnumeration):
    """Enumeration of the tasks a submission can be scored on."""

    LOCALIZATION_6D = "loc6d"
    DETECTION_6D = "det6d"
    DETECTION_2D = "det2d"

    @property
    def error_kinds(self) -> Tuple[PoseErrorKind, ...]:
        """The functions whose scores are averaged into the per-dataset score."""
        if self is Task.LOCALIZATION_6D:
            return PoseErrorKind.VSD, PoseErrorKind.MSSD, PoseErrorKind.MSPD
        if self is Task.DETECTION_6D:
            return PoseErrorKind.MSSD, PoseErrorKind.MSPD
        return (PoseErrorKind.IOU2D,)

    @property
    def is_pose_task(self) -> bool:
        """Whether submissions for this task carry 6D poses rather than boxes."""
        return self is not Task.DETECTION_2D

    @property
    def score_name(self) -> str:
        """Name of the headline score: AR for localization, AP for detection."""
        return "AR" if self is Task.LOCALIZATION_6D else "AP"
