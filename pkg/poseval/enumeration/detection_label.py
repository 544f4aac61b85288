"""Outcome of matching one detection."""
from poseval.enumeration.base_enumeration import BaseEnumeration


class DetectionLabel(BaseEnumeration):
    """
    How a detection counts in a precision/recall sweep.

    IGNORED detections matched an instance that is too occluded to be evaluated and are
    neither true nor false positives.
    """

    TRUE_POSITIVE = "tp"
    FALSE_POSITIVE = "fp"
    IGNORED = "ignored"
