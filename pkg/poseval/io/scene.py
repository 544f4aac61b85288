"""
Per-scene annotation files.

``scene_gt.json`` holds the poses, ``scene_gt_info.json`` the visibility of every
instance (aligned by position) and ``scene_camera.json`` the camera of every image.
The dataset-wide ``camera.json`` supplies the image size.
"""
import json
import math
from logging import getLogger
from typing import Dict, List, Mapping, Optional

from poseval.exceptions import LengthMismatch, UnsupportedCameraModel, ValidationError
from poseval.geom import CameraIntrinsics, RigidPose
from poseval.metrics.instances import GtInstance
from poseval.pose_error.box import Box2D

logger = getLogger(__name__)

PINHOLE = "pinhole"


class GtAnnotation(object):
    """One ``scene_gt`` entry: an object id and its model-to-camera pose."""

    __slots__ = ("obj_id", "pose")

    def __init__(self, obj_id: int, pose: RigidPose):
        self.obj_id = int(obj_id)
        self.pose = pose

    def __repr__(self):
        return "GtAnnotation(obj_id={})".format(self.obj_id)


class GtInfo(object):
    """
    One ``scene_gt_info`` entry.

    Parameters
    ----------
    visib_fract: float
        Visible fraction of the projected surface.
    bbox_obj: Box2D, optional
        Amodal box; None when the file does not carry one.
    bbox_visib: Box2D, optional
        Box of the visible part; None when missing.

    """

    __slots__ = ("visib_fract", "bbox_obj", "bbox_visib")

    def __init__(self, visib_fract: float, bbox_obj: Optional[Box2D] = None,
                 bbox_visib: Optional[Box2D] = None):
        self.visib_fract = float(visib_fract)
        self.bbox_obj = bbox_obj
        self.bbox_visib = bbox_visib

    @property
    def amodal_box(self) -> Box2D:
        """The amodal box, else the visible box, else an empty box at the origin."""
        for box in (self.bbox_obj, self.bbox_visib):
            if box is not None:
                return box
        return Box2D(0.0, 0.0, 0.0, 0.0)


class CameraInfo(object):
    """
    Dataset-wide camera defaults from ``camera.json``.

    Parameters
    ----------
    width, height: int
        Image size in pixels.
    depth_scale: float
        Millimeters per raw depth unit, used when an image does not state its own.

    """

    __slots__ = ("width", "height", "depth_scale")

    def __init__(self, width: int, height: int, depth_scale: float = 1.0):
        self.width = int(width)
        self.height = int(height)
        self.depth_scale = _depth_scale(depth_scale)


class ImageCamera(object):
    """The intrinsics and depth scale of one image."""

    __slots__ = ("intrinsics", "depth_scale")

    def __init__(self, intrinsics: CameraIntrinsics, depth_scale: float):
        self.intrinsics = intrinsics
        self.depth_scale = _depth_scale(depth_scale)

    def __eq__(self, other):
        if not isinstance(other, ImageCamera):
            return False
        return self.intrinsics == other.intrinsics and self.depth_scale == other.depth_scale

    __hash__ = None


def _depth_scale(value) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise ValidationError("depth_scale must be positive, got {}".format(value))
    return value


def _load(data: bytes, name: str) -> dict:
    try:
        raw = json.loads(data)
    except ValueError as err:
        raise ValidationError("{} is not valid JSON: {}".format(name, err))
    if not isinstance(raw, dict):
        raise ValidationError("{} must be a JSON object keyed by im_id".format(name))
    return raw


def _im_id(key, name: str) -> int:
    try:
        return int(key)
    except ValueError:
        raise ValidationError("{} key {!r} is not an image id".format(name, key))


def _dump(by_image: Mapping[int, object]) -> bytes:
    ordered = {str(im_id): by_image[im_id] for im_id in sorted(by_image)}
    return (json.dumps(ordered, indent=2) + "\n").encode("utf-8")


def _box(values) -> Optional[Box2D]:
    """A box from the file; negative extents mark an instance without a box."""
    if values is None:
        return None
    box = [float(v) for v in values]
    if len(box) == 4 and (box[2] < 0 or box[3] < 0):
        return None
    return Box2D.from_list(box)


def parse_scene_gt(data: bytes) -> Dict[int, List[GtAnnotation]]:
    """
    Parse ``scene_gt.json``: per image, the annotated instances in file order.

    Raises
    ------
    BadRotation
        If a ``cam_R_m2c`` is not a rotation.

    """
    result = {}
    for key, entries in _load(data, "scene_gt").items():
        im_id = _im_id(key, "scene_gt")
        annotations = []
        for entry in entries:
            try:
                pose = RigidPose.from_flat(entry["cam_R_m2c"], entry["cam_t_m2c"])
                annotations.append(GtAnnotation(entry["obj_id"], pose))
            except KeyError as err:
                raise ValidationError("scene_gt image {} entry lacks {}".format(im_id, err))
            except ValidationError as err:
                err.message = "scene_gt image {}: {}".format(im_id, err.message)
                raise
        result[im_id] = annotations
    return result


def parse_scene_gt_info(data: bytes) -> Dict[int, List[GtInfo]]:
    """Parse ``scene_gt_info.json``: per image, the visibility of every instance."""
    result = {}
    for key, entries in _load(data, "scene_gt_info").items():
        im_id = _im_id(key, "scene_gt_info")
        infos = []
        for entry in entries:
            if "visib_fract" not in entry:
                raise ValidationError("scene_gt_info image {} entry lacks visib_fract".format(
                    im_id))
            infos.append(GtInfo(entry["visib_fract"], _box(entry.get("bbox_obj")),
                                _box(entry.get("bbox_visib"))))
        result[im_id] = infos
    return result


def combine_gt(scene_gt: Mapping[int, List[GtAnnotation]],
               scene_gt_info: Mapping[int, List[GtInfo]]) -> Dict[int, List[GtInstance]]:
    """
    Join poses and visibility by position; gt index i in the file becomes gt_id i.

    Raises
    ------
    LengthMismatch
        If an image has a different number of entries in the two files.

    """
    result = {}
    for im_id in sorted(scene_gt):
        annotations = scene_gt[im_id]
        infos = scene_gt_info.get(im_id, [])
        if len(annotations) != len(infos):
            raise LengthMismatch("Image {} has {} poses but {} visibility entries".format(
                im_id, len(annotations), len(infos)))
        result[im_id] = [GtInstance(gt_id, a.obj_id, a.pose, info.visib_fract, info.amodal_box)
                         for gt_id, (a, info) in enumerate(zip(annotations, infos))]
    return result


def parse_camera_info(data: bytes) -> CameraInfo:
    """Parse the dataset-wide ``camera.json``."""
    try:
        raw = json.loads(data)
    except ValueError as err:
        raise ValidationError("camera.json is not valid JSON: {}".format(err))
    if not isinstance(raw, dict) or "width" not in raw or "height" not in raw:
        raise ValidationError("camera.json must give the image width and height")
    _check_model(raw, "camera.json")
    return CameraInfo(raw["width"], raw["height"], raw.get("depth_scale", 1.0))


def _check_model(entry: dict, where: str):
    model = entry.get("cam_model", PINHOLE)
    if model != PINHOLE:
        raise UnsupportedCameraModel("{} uses camera model {!r}; only {!r} is supported".format(
            where, model, PINHOLE))


def parse_scene_camera(data: bytes,
                       camera_info: Optional[CameraInfo] = None) -> Dict[int, ImageCamera]:
    """
    Parse ``scene_camera.json``.

    Image sizes come from the entry itself when present, otherwise from `camera_info`.

    Raises
    ------
    UnsupportedCameraModel
        If an image declares a camera model other than pinhole.

    """
    result = {}
    for key, entry in _load(data, "scene_camera").items():
        im_id = _im_id(key, "scene_camera")
        where = "scene_camera image {}".format(im_id)
        _check_model(entry, where)
        width = entry.get("width", camera_info.width if camera_info else None)
        height = entry.get("height", camera_info.height if camera_info else None)
        if width is None or height is None or "cam_K" not in entry:
            raise ValidationError("{} needs cam_K and an image size".format(where))
        default_scale = camera_info.depth_scale if camera_info else 1.0
        intrinsics = CameraIntrinsics.from_matrix(entry["cam_K"], width=width, height=height)
        result[im_id] = ImageCamera(intrinsics, entry.get("depth_scale", default_scale))
    return result


def write_scene_gt(by_image: Mapping[int, List[GtAnnotation]]) -> bytes:
    """Serialize ``scene_gt.json``."""
    return _dump({im_id: [{"cam_R_m2c": a.pose.rotation.reshape(-1).tolist(),
                           "cam_t_m2c": a.pose.translation.tolist(),
                           "obj_id": a.obj_id} for a in annotations]
                  for im_id, annotations in by_image.items()})


def write_scene_gt_info(by_image: Mapping[int, List[GtInfo]]) -> bytes:
    """Serialize ``scene_gt_info.json``; missing boxes are written as ``[-1, -1, -1, -1]``."""
    def box(value):
        return [-1, -1, -1, -1] if value is None else value.as_list()

    return _dump({im_id: [{"bbox_obj": box(info.bbox_obj),
                           "bbox_visib": box(info.bbox_visib),
                           "visib_fract": info.visib_fract} for info in infos]
                  for im_id, infos in by_image.items()})


def write_scene_camera(by_image: Mapping[int, ImageCamera]) -> bytes:
    """Serialize ``scene_camera.json``."""
    return _dump({im_id: {"cam_K": camera.intrinsics.matrix.reshape(-1).tolist(),
                          "depth_scale": camera.depth_scale,
                          "height": camera.intrinsics.height,
                          "width": camera.intrinsics.width}
                  for im_id, camera in by_image.items()})


def write_camera_info(info: CameraInfo) -> bytes:
    """Serialize ``camera.json``."""
    raw = {"cam_model": PINHOLE, "depth_scale": info.depth_scale,
           "height": info.height, "width": info.width}
    return (json.dumps(raw, indent=2) + "\n").encode("utf-8")
