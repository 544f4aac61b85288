"""Ground-truth instances, predictions and the localization target list."""
import math
from typing import Dict, Iterator, List, Optional, Tuple

from poseval.exceptions import DuplicateTarget, NonFiniteScore, NonPositiveCount, ValidationError
from poseval.geom import RigidPose
from poseval.pose_error.box import Box2D

# Instances with a smaller visible fraction are ignored.
VISIBILITY_THRESHOLD = 0.1

ImageKey = Tuple[int, int]


def _check_id(name: str, value) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ValidationError("{} must be an integer, got {!r}".format(name, value))
    return int(value)


def _check_finite(name: str, value) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteScore("{} must be finite, got {}".format(name, value))
    return value


class GtInstance(object):
    """
    One annotated object instance in a test image.

    Parameters
    ----------
    gt_id: int
        Position of the instance in the image's annotation list.
    obj_id: int
        Object identifier.
    pose: RigidPose
        Model-to-camera pose.
    visib_fract: float
        Visible fraction of the projected surface, in [0, 1].
    bbox: Box2D
        Amodal bounding box.

    """

    __slots__ = ("gt_id", "obj_id", "pose", "visib_fract", "bbox")

    def __init__(self, gt_id: int, obj_id: int, pose: RigidPose, visib_fract: float,
                 bbox: Box2D):
        if not isinstance(pose, RigidPose):
            raise TypeError("pose must be a RigidPose, got {}".format(type(pose)))
        if not isinstance(bbox, Box2D):
            raise TypeError("bbox must be a Box2D, got {}".format(type(bbox)))
        visib_fract = float(visib_fract)
        if not 0 <= visib_fract <= 1:
            raise ValidationError("visib_fract must be in [0, 1], got {}".format(visib_fract))
        self.gt_id = _check_id("gt_id", gt_id)
        self.obj_id = _check_id("obj_id", obj_id)
        self.pose = pose
        self.visib_fract = visib_fract
        self.bbox = bbox

    @property
    def eligible(self) -> bool:
        """Whether the instance is visible enough to be evaluated."""
        return self.visib_fract >= VISIBILITY_THRESHOLD

    def __repr__(self):
        return "GtInstance(gt_id={}, obj_id={}, visib_fract={})".format(
            self.gt_id, self.obj_id, self.visib_fract)


class PoseEstimate(object):
    """A 6D pose prediction with its confidence and run time."""

    __slots__ = ("scene_id", "im_id", "obj_id", "pose", "score", "time_s")

    def __init__(self, scene_id: int, im_id: int, obj_id: int, pose: RigidPose, score: float,
                 time_s: float):
        if not isinstance(pose, RigidPose):
            raise TypeError("pose must be a RigidPose, got {}".format(type(pose)))
        self.scene_id = _check_id("scene_id", scene_id)
        self.im_id = _check_id("im_id", im_id)
        self.obj_id = _check_id("obj_id", obj_id)
        self.pose = pose
        self.score = _check_finite("score", score)
        self.time_s = _check_finite("time", time_s)

    @property
    def image(self) -> ImageKey:
        """The (scene_id, im_id) pair of the prediction."""
        return self.scene_id, self.im_id

    def __repr__(self):
        return "PoseEstimate(scene_id={}, im_id={}, obj_id={}, score={})".format(
            self.scene_id, self.im_id, self.obj_id, self.score)


class Detection2D(object):
    """An amodal 2D box prediction with its confidence and run time."""

    __slots__ = ("scene_id", "im_id", "obj_id", "bbox", "score", "time_s")

    def __init__(self, scene_id: int, im_id: int, obj_id: int, bbox: Box2D, score: float,
                 time_s: float):
        if not isinstance(bbox, Box2D):
            raise TypeError("bbox must be a Box2D, got {}".format(type(bbox)))
        self.scene_id = _check_id("scene_id", scene_id)
        self.im_id = _check_id("im_id", im_id)
        self.obj_id = _check_id("obj_id", obj_id)
        self.bbox = bbox
        self.score = _check_finite("score", score)
        self.time_s = _check_finite("time", time_s)

    @property
    def image(self) -> ImageKey:
        """The (scene_id, im_id) pair of the prediction."""
        return self.scene_id, self.im_id

    def __repr__(self):
        return "Detection2D(scene_id={}, im_id={}, obj_id={}, score={})".format(
            self.scene_id, self.im_id, self.obj_id, self.score)


class TargetList(object):
    """
    The evaluated images and, per image, the objects and instance counts to localize.

    Images iterate in ascending (scene_id, im_id) order; objects within an image keep
    the order they were added in.
    """

    def __init__(self):
        self._targets: Dict[ImageKey, Dict[int, int]] = {}

    def add(self, scene_id: int, im_id: int, obj_id: int, inst_count: int):
        """Register `inst_count` instances of `obj_id` in an image."""
        key = (_check_id("scene_id", scene_id), _check_id("im_id", im_id))
        obj_id = _check_id("obj_id", obj_id)
        inst_count = _check_id("inst_count", inst_count)
        if inst_count < 1:
            raise NonPositiveCount("inst_count must be >= 1, got {} for {}/{}/{}".format(
                inst_count, key[0], key[1], obj_id))
        objects = self._targets.setdefault(key, {})
        if obj_id in objects:
            raise DuplicateTarget("Duplicate target scene_id={}, im_id={}, obj_id={}".format(
                key[0], key[1], obj_id))
        objects[obj_id] = inst_count

    def images(self) -> List[ImageKey]:
        """Targeted (scene_id, im_id) pairs, sorted."""
        return sorted(self._targets)

    def targets(self, scene_id: int, im_id: int) -> List[Tuple[int, int]]:
        """The list of (obj_id, inst_count) for one image; empty if not targeted."""
        return list(self._targets.get((scene_id, im_id), {}).items())

    def inst_count(self, scene_id: int, im_id: int, obj_id: int) -> Optional[int]:
        """Instance count of one object in one image, or None if not targeted."""
        return self._targets.get((scene_id, im_id), {}).get(obj_id)

    def object_ids(self) -> List[int]:
        """Every targeted object id, sorted."""
        return sorted({obj_id for objects in self._targets.values() for obj_id in objects})

    def scene_ids(self) -> List[int]:
        """Every targeted scene id, sorted."""
        return sorted({scene_id for scene_id, _ in self._targets})

    def __iter__(self) -> Iterator[Tuple[int, int, int, int]]:
        for scene_id, im_id in self.images():
            for obj_id, count in self._targets[(scene_id, im_id)].items():
                yield scene_id, im_id, obj_id, count

    def __contains__(self, image: ImageKey) -> bool:
        return tuple(image) in self._targets

    def __len__(self):
        return len(self._targets)

    def __repr__(self):
        return "TargetList({} images)".format(len(self._targets))
