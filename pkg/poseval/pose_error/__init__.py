"""Pose-error functions: MSSD, MSPD, VSD and 2D box IoU."""
# flake8: noqa
from .box import Box2D
from .impl import mssd, mspd, vsd, vsd_errors, vsd_from_depth, iou_2d
