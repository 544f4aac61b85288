"""Kinds of pose-error and overlap functions."""
from poseval.enumeration.base_enumeration import BaseEnumeration


class PoseErrorKind(BaseEnumeration):
    """
    Enumeration of the functions that score a prediction against a ground-truth instance.

    MSSD, MSPD and VSD are errors (lower is better); IOU2D is an overlap (higher is better).
    """

    MSSD = "mssd"
    MSPD = "mspd"
    VSD = "vsd"
    IOU2D = "iou"

    @property
    def higher_is_better(self) -> bool:
        """Whether larger values of this function mean a better prediction."""
        return self is PoseErrorKind.IOU2D
