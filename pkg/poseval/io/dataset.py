"""Access to a dataset stored in the standard directory layout."""
import json
import threading
from logging import getLogger
from pathlib import Path
from typing import Callable, Dict, List, TypeVar

from poseval.exceptions import ValidationError
from poseval.geom import ContinuousSymmetry, RigidPose, SymmetrySpec, TriMesh
from poseval.io.depth import load_depth
from poseval.io.models_info import ModelsInfo, ObjectInfo, parse_models_info
from poseval.io.ply import parse_ply
from poseval.io.scene import CameraInfo, ImageCamera, combine_gt, parse_camera_info, \
    parse_scene_camera, parse_scene_gt, parse_scene_gt_info
from poseval.metrics.instances import GtInstance
from poseval.render import DepthMap
from poseval.units import IncompatibleUnitsError, LENGTH_UNIT, UndefinedUnitError, length_scale, \
    parse_units

logger = getLogger(__name__)

T = TypeVar("T")


def read_file(path: Path, parser: Callable[[bytes], T]) -> T:
    """Parse a file, attaching its path to any validation error."""
    data = Path(path).read_bytes()
    try:
        return parser(data)
    except ValidationError as err:
        raise err.located(str(path))


def parse_json_object(data: bytes) -> dict:
    """Decode a JSON object; anything else raises ValidationError."""
    try:
        value = json.loads(data.decode("utf-8"))
    except ValueError as err:
        raise ValidationError("Not valid JSON: {}".format(err))
    if not isinstance(value, dict):
        raise ValidationError("Expected a JSON object")
    return value


def model_path(root: Path, obj_id: int) -> Path:
    """Where the mesh of `obj_id` is stored."""
    return Path(root) / "models" / "obj_{:06d}.ply".format(obj_id)


def scene_path(root: Path, scene_id: int, split: str = "test") -> Path:
    """The directory of one scene."""
    return Path(root) / split / "{:06d}".format(scene_id)


def depth_path(root: Path, scene_id: int, im_id: int, split: str = "test") -> Path:
    """The depth image of one image."""
    return scene_path(root, scene_id, split) / "depth" / "{:06d}.png".format(im_id)


def _scaled_pose(pose: RigidPose, scale: float) -> RigidPose:
    return RigidPose(pose.rotation, pose.translation * scale)


class BopDataset(object):
    """
    A dataset directory: models, per-scene annotations and depth images.

    Parsed files are cached; access is safe from several threads.  Every length is
    returned in millimeters: a ``dataset_info.json`` with a ``length_unit`` entry
    declares the unit the files are stored in.

    Parameters
    ----------
    root: Path
        The dataset directory; its name is the dataset name.
    split: str
        The sub-directory holding the scenes.

    """

    def __init__(self, root, split: str = "test"):
        self.root = Path(root)
        self.split = split
        self.name = self.root.name
        self._lock = threading.RLock()
        self._cache: Dict[tuple, object] = {}
        self.scale = self._read_scale()

    def _read_scale(self) -> float:
        info_path = self.root / "dataset_info.json"
        if not info_path.exists():
            return 1.0
        info = read_file(info_path, parse_json_object)
        unit = info.get("length_unit", LENGTH_UNIT)
        try:
            unit = parse_units(unit)
            scale = length_scale(unit)
        except (IncompatibleUnitsError, UndefinedUnitError) as err:
            raise ValidationError("length_unit {!r} is not a length: {}".format(unit, err),
                                  path=str(info_path))
        if scale != 1.0:
            logger.info("Dataset {} is stored in {}; converting to {}".format(
                self.name, unit, LENGTH_UNIT))
        return scale

    def _cached(self, key: tuple, load: Callable[[], T]) -> T:
        with self._lock:
            if key not in self._cache:
                self._cache[key] = load()
            return self._cache[key]

    @property
    def camera_info(self) -> CameraInfo:
        """Dataset-wide camera defaults."""
        return self._cached(("camera",), lambda: read_file(self.root / "camera.json",
                                                           parse_camera_info))

    @property
    def models_info(self) -> ModelsInfo:
        """Diameters and symmetries of every object, in millimeters."""
        return self._cached(("models_info",), self._load_models_info)

    def _load_models_info(self) -> ModelsInfo:
        info = read_file(self.root / "models" / "models_info.json", parse_models_info)
        if self.scale == 1.0:
            return info
        objects = {}
        for obj_id in info:
            item = info[obj_id]
            symmetries = SymmetrySpec(
                [_scaled_pose(t, self.scale) for t in item.symmetries.discrete],
                [ContinuousSymmetry(s.axis, s.offset * self.scale)
                 for s in item.symmetries.continuous])
            objects[obj_id] = ObjectInfo(item.diameter * self.scale, symmetries)
        return ModelsInfo(objects)

    def mesh(self, obj_id: int) -> TriMesh:
        """The model of one object, in millimeters."""
        def load():
            mesh = read_file(model_path(self.root, obj_id), parse_ply)
            return mesh if self.scale == 1.0 else mesh.scaled(self.scale)
        return self._cached(("mesh", obj_id), load)

    def scene_ids(self) -> List[int]:
        """Scenes present on disk, ascending."""
        split_dir = self.root / self.split
        if not split_dir.is_dir():
            return []
        return sorted(int(p.name) for p in split_dir.iterdir() if p.is_dir() and p.name.isdigit())

    def gt(self, scene_id: int) -> Dict[int, List[GtInstance]]:
        """Ground-truth instances of every image of a scene."""
        return self._cached(("gt", scene_id), lambda: self._load_gt(scene_id))

    def _load_gt(self, scene_id: int) -> Dict[int, List[GtInstance]]:
        directory = scene_path(self.root, scene_id, self.split)
        gt_path, info_path = directory / "scene_gt.json", directory / "scene_gt_info.json"
        poses = read_file(gt_path, parse_scene_gt)
        infos = read_file(info_path, parse_scene_gt_info)
        try:
            instances = combine_gt(poses, infos)
        except ValidationError as err:
            raise err.located(str(info_path))
        if self.scale == 1.0:
            return instances
        return {im_id: [GtInstance(g.gt_id, g.obj_id, _scaled_pose(g.pose, self.scale),
                                   g.visib_fract, g.bbox) for g in gts]
                for im_id, gts in instances.items()}

    def cameras(self, scene_id: int) -> Dict[int, ImageCamera]:
        """Camera of every image of a scene; depth scales are in millimeters per unit."""
        def load():
            path = scene_path(self.root, scene_id, self.split) / "scene_camera.json"
            cameras = read_file(path, lambda data: parse_scene_camera(data, self.camera_info))
            if self.scale == 1.0:
                return cameras
            return {im_id: ImageCamera(c.intrinsics, c.depth_scale * self.scale)
                    for im_id, c in cameras.items()}
        return self._cached(("cameras", scene_id), load)

    def camera(self, scene_id: int, im_id: int) -> ImageCamera:
        """Camera of one image."""
        cameras = self.cameras(scene_id)
        if im_id not in cameras:
            raise ValidationError("Scene {} has no camera for image {}".format(scene_id, im_id))
        return cameras[im_id]

    def depth(self, scene_id: int, im_id: int) -> DepthMap:
        """Depth image of one image in millimeters; not cached."""
        scale = self.camera(scene_id, im_id).depth_scale
        return read_file(depth_path(self.root, scene_id, im_id, self.split),
                         lambda data: load_depth(data, scale))

    def __repr__(self):
        return "BopDataset({!r})".format(str(self.root))
