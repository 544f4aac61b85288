"""Tests of instances, predictions and target lists."""
import numpy as np
import pytest

from poseval.exceptions import DuplicateTarget, NonFiniteScore, NonPositiveCount, \
    ValidationError
from poseval.geom import RigidPose
from poseval.metrics import Detection2D, GtInstance, PoseEstimate, TargetList
from poseval.pose_error import Box2D

POSE = RigidPose(np.eye(3), (0, 0, 500))
BOX = Box2D(1, 2, 3, 4)


def test_gt_instance():
    """Eligibility starts at ten percent visibility."""
    assert GtInstance(0, 1, POSE, 0.95, BOX).eligible
    assert GtInstance(0, 1, POSE, 0.1, BOX).eligible
    assert not GtInstance(1, 1, POSE, 0.05, BOX).eligible
    with pytest.raises(ValidationError):
        GtInstance(0, 1, POSE, 1.5, BOX)
    with pytest.raises(TypeError):
        GtInstance(0, 1, np.eye(4), 0.5, BOX)


def test_predictions():
    """Scores must be finite."""
    estimate = PoseEstimate(1, 2, 3, POSE, 0.5, 1.2)
    assert estimate.image == (1, 2)
    with pytest.raises(NonFiniteScore):
        PoseEstimate(1, 2, 3, POSE, float("nan"), 1.2)
    with pytest.raises(NonFiniteScore):
        Detection2D(1, 2, 3, BOX, 0.5, float("inf"))
    with pytest.raises(ValidationError):
        Detection2D(1, 2.5, 3, BOX, 0.5, 1.0)
    assert Detection2D(1, 2, 3, BOX, 0.5, 1.0).image == (1, 2)


def test_target_list():
    """Targets group by image and reject duplicates and empty counts."""
    targets = TargetList()
    targets.add(1, 5, 2, 1)
    targets.add(1, 5, 3, 2)
    targets.add(0, 7, 2, 1)
    assert targets.images() == [(0, 7), (1, 5)]
    assert targets.targets(1, 5) == [(2, 1), (3, 2)]
    assert targets.inst_count(1, 5, 3) == 2
    assert targets.inst_count(1, 6, 3) is None
    assert targets.object_ids() == [2, 3]
    assert (1, 5) in targets and len(targets) == 2
    assert list(targets) == [(0, 7, 2, 1), (1, 5, 2, 1), (1, 5, 3, 2)]
    with pytest.raises(DuplicateTarget):
        targets.add(1, 5, 3, 1)
    with pytest.raises(NonPositiveCount):
        targets.add(1, 6, 3, 0)
