"""
A small synthetic dataset with reference submissions.

Three objects (a cube, an L-shaped solid and a square prism with annotated symmetries) are
placed at random in two scenes of twelve images each.  Scene depth is rendered, written
through the 16-bit PNG encoding, and the visible fraction of every instance is measured
against the depth as stored.  Three submissions come with it:

* ``perfect-poses.csv``: every evaluated instance at its ground-truth pose.
* ``perturbed-poses.csv``: every evaluated instance shifted along a camera axis by the
  ``0.30 d`` MSSD threshold, so that MSSD is correct at exactly 4 of the 10 default
  thresholds.
* ``perfect-boxes.csv``: every evaluated instance with its amodal box.
"""
import math
from logging import getLogger
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np
from scipy.spatial.transform import Rotation

from poseval.enumeration import PoseErrorKind, Task
from poseval.geom import CameraIntrinsics, RigidPose, SymmetrySpec, TriMesh, \
    discretize_symmetries, mesh_diameter, project, transform_points
from poseval.io import CameraInfo, GtAnnotation, GtInfo, ImageCamera, ModelsInfo, ObjectInfo, \
    depth_path, model_path, quantize_depth, scene_path, write_camera_info, write_depth, \
    write_models_info, write_ply, write_scene_camera, write_scene_gt, write_scene_gt_info, \
    write_submission_csv, write_targets
from poseval.metrics import VISIBILITY_THRESHOLD, Detection2D, PoseEstimate, TargetList, \
    default_grid
from poseval.pose_error import Box2D, mssd
from poseval.render import DepthMap, rasterize_depth, render_scene, visibility_mask
from poseval.demo.shapes import box_mesh, centered, merge_meshes

logger = getLogger(__name__)

FIXTURE_NAME = "fixture"
DEPTH_SCALE = 0.1
SCENE_IDS = (1, 2)
IMAGES_PER_SCENE = 12
MAX_INSTANCES = 5
# Instances sit in distinct cells of a 3 x 2 grid, jittered, at integer positions (mm).
CELLS = [(x, y) for y in (-120, 120) for x in (-200, 0, 200)]
JITTER = 40
DEPTH_RANGE = (700, 1100)
# Index of the 0.30 d threshold in the default MSSD grid.
PERTURBED_THRESHOLD = 5
_AXES = [np.array(v, dtype=np.float64) for v in
         ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))]


def fixture_camera() -> CameraIntrinsics:
    """The camera of every fixture image."""
    return CameraIntrinsics(fx=400.0, fy=400.0, cx=160.0, cy=120.0, width=320, height=240)


def _rotation(matrix) -> RigidPose:
    return RigidPose(np.array(matrix, dtype=np.float64), np.zeros(3))


def fixture_objects() -> Dict[int, Tuple[TriMesh, SymmetrySpec]]:
    """Mesh and symmetry annotation of every fixture object."""
    cube = box_mesh((-30, -30, -30), (30, 30, 30))
    l_shape = centered(merge_meshes(box_mesh((0, 0, -15), (80, 30, 15)),
                                    box_mesh((0, 30, -15), (30, 70, 15))))
    prism = box_mesh((-25, -25, -45), (25, 25, 45))
    # the dihedral group of the square cross-section, identity excluded
    prism_symmetries = SymmetrySpec([_rotation(m) for m in (
        [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
        [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
        [[0, 1, 0], [-1, 0, 0], [0, 0, 1]],
        [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
        [[-1, 0, 0], [0, 1, 0], [0, 0, -1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, -1]],
        [[0, -1, 0], [-1, 0, 0], [0, 0, -1]],
    )])
    return {1: (cube, SymmetrySpec()), 2: (l_shape, SymmetrySpec()), 3: (prism, prism_symmetries)}


def _place(rng: np.random.Generator, count: int) -> List[Tuple[int, RigidPose]]:
    cells = rng.choice(len(CELLS), size=count, replace=False)
    placements = []
    for cell in cells:
        x, y = CELLS[int(cell)]
        translation = (x + int(rng.integers(-JITTER, JITTER + 1)),
                       y + int(rng.integers(-JITTER, JITTER + 1)),
                       int(rng.integers(DEPTH_RANGE[0], DEPTH_RANGE[1] + 1)))
        rotation = Rotation.random(None, rng).as_matrix()
        placements.append((int(rng.integers(1, 4)), RigidPose(rotation, translation)))
    return placements


def _amodal_box(mesh: TriMesh, pose: RigidPose, intrinsics: CameraIntrinsics) -> Box2D:
    uv = project(intrinsics, transform_points(pose, mesh.vertices))
    low, high = uv.min(axis=0), uv.max(axis=0)
    return Box2D(float(low[0]), float(low[1]), float(high[0] - low[0]), float(high[1] - low[1]))


def _pixel_box(bits: np.ndarray):
    rows, cols = np.nonzero(bits)
    if len(rows) == 0:
        return None
    return Box2D(int(cols.min()), int(rows.min()), int(cols.max() - cols.min()) + 1,
                 int(rows.max() - rows.min()) + 1)


def render_image(objects: Dict[int, Tuple[TriMesh, SymmetrySpec]],
                 placements: List[Tuple[int, RigidPose]],
                 intrinsics: CameraIntrinsics) -> Tuple[np.ndarray, List[GtInfo]]:
    """
    Render the depth of an image and measure the visibility of its instances.

    Returns
    -------
    Tuple[np.ndarray, List[GtInfo]]
        Raw 16-bit depth and one visibility record per placement.

    """
    composite = render_scene([(objects[obj_id][0], pose) for obj_id, pose in placements],
                             intrinsics)
    raw = quantize_depth(composite, DEPTH_SCALE)
    stored = DepthMap(raw.astype(np.float64) * DEPTH_SCALE)
    infos = []
    for obj_id, pose in placements:
        mesh = objects[obj_id][0]
        alone = rasterize_depth(mesh, pose, intrinsics)
        visible = visibility_mask(alone, stored)
        footprint = alone.footprint().count()
        infos.append(GtInfo(visible.count() / footprint if footprint else 0.0,
                            _amodal_box(mesh, pose, intrinsics), _pixel_box(visible.bits)))
    return raw, infos


def _perturbed(gt: RigidPose, axis: np.ndarray, vertices: np.ndarray, symmetries,
               thresholds: List[float]) -> RigidPose:
    """`gt` shifted so that its MSSD lies in ``[thresholds[5], thresholds[6])``."""
    low, high = thresholds[PERTURBED_THRESHOLD], thresholds[PERTURBED_THRESHOLD + 1]
    shift = low
    for _ in range(64):
        pose = RigidPose(gt.rotation, gt.translation + shift * axis)
        error = mssd(pose, gt, vertices, symmetries)
        if low <= error < high:
            return pose
        shift = np.nextafter(shift, math.inf if error < low else -math.inf)
    raise RuntimeError("Cannot place a perturbed pose between {} and {}".format(low, high))


def make_fixture_dataset(seed: int, out_dir) -> Path:
    """
    Write the fixture dataset and its submissions.

    Parameters
    ----------
    seed: int
        Seed of every random choice; equal seeds give byte-identical trees.
    out_dir: path
        Directory to write into; the dataset is ``out_dir/fixture``.

    Returns
    -------
    Path
        The dataset directory.

    """
    rng = np.random.default_rng(seed)
    root = Path(out_dir) / FIXTURE_NAME
    intrinsics = fixture_camera()
    objects = fixture_objects()

    (root / "models").mkdir(parents=True, exist_ok=True)
    diameters = {}
    for obj_id, (mesh, symmetries) in objects.items():
        model_path(root, obj_id).write_bytes(write_ply(mesh))
        diameters[obj_id] = mesh_diameter(mesh)
    (root / "models" / "models_info.json").write_bytes(write_models_info(ModelsInfo(
        {obj_id: ObjectInfo(diameters[obj_id], spec) for obj_id, (_, spec) in objects.items()})))
    (root / "camera.json").write_bytes(write_camera_info(
        CameraInfo(intrinsics.width, intrinsics.height, DEPTH_SCALE)))

    grid = default_grid(PoseErrorKind.MSSD)
    symmetries = {obj_id: discretize_symmetries(spec, diameters[obj_id])
                  for obj_id, (_, spec) in objects.items()}
    targets = TargetList()
    perfect, perturbed, boxes = [], [], []
    for scene_id in SCENE_IDS:
        directory = scene_path(root, scene_id)
        (directory / "depth").mkdir(parents=True, exist_ok=True)
        annotations, infos, cameras = {}, {}, {}
        for im_id in range(IMAGES_PER_SCENE):
            placements = _place(rng, int(rng.integers(1, MAX_INSTANCES + 1)))
            raw, image_infos = render_image(objects, placements, intrinsics)
            depth_path(root, scene_id, im_id).write_bytes(write_depth(raw))
            annotations[im_id] = [GtAnnotation(obj_id, pose) for obj_id, pose in placements]
            infos[im_id] = image_infos
            cameras[im_id] = ImageCamera(intrinsics, DEPTH_SCALE)

            time_s = int(rng.integers(1, 10)) / 10
            counts: Dict[int, int] = {}
            for (obj_id, pose), info in zip(placements, image_infos):
                score = float(rng.uniform(0.5, 1.0))
                axis = _AXES[int(rng.integers(len(_AXES)))]
                if info.visib_fract < VISIBILITY_THRESHOLD:
                    continue
                counts[obj_id] = counts.get(obj_id, 0) + 1
                thresholds, _ = grid.resolve(diameter=diameters[obj_id])
                shifted = _perturbed(pose, axis, objects[obj_id][0].vertices,
                                     symmetries[obj_id], thresholds)
                perfect.append(PoseEstimate(scene_id, im_id, obj_id, pose, score, time_s))
                perturbed.append(PoseEstimate(scene_id, im_id, obj_id, shifted, score, time_s))
                boxes.append(Detection2D(scene_id, im_id, obj_id, info.amodal_box, score,
                                         time_s))
            for obj_id in sorted(counts):
                targets.add(scene_id, im_id, obj_id, counts[obj_id])

        (directory / "scene_gt.json").write_bytes(write_scene_gt(annotations))
        (directory / "scene_gt_info.json").write_bytes(write_scene_gt_info(infos))
        (directory / "scene_camera.json").write_bytes(write_scene_camera(cameras))

    (root / "test_targets.json").write_bytes(write_targets(targets))
    submissions = root / "submissions"
    submissions.mkdir(exist_ok=True)
    (submissions / "perfect-poses.csv").write_bytes(
        write_submission_csv(perfect, Task.LOCALIZATION_6D))
    (submissions / "perturbed-poses.csv").write_bytes(
        write_submission_csv(perturbed, Task.LOCALIZATION_6D))
    (submissions / "perfect-boxes.csv").write_bytes(
        write_submission_csv(boxes, Task.DETECTION_2D))
    logger.info("Wrote {} targets in {} images to {}".format(
        sum(1 for _ in targets), len(targets), root))
    return root
