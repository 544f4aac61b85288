"""
Pose-error functions and the 2D box overlap.

All functions are pure.  Invalid geometry raises; nothing is clamped.
"""
import math
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from poseval.exceptions import DimensionMismatch, EmptyVertexSet, ValidationError
from poseval.geom import CameraIntrinsics, RigidPose, SymmetrySet, TriMesh, project, \
    transform_points
from poseval.pose_error.box import Box2D
from poseval.render import DepthMap, rasterize_depth, visibility_mask
from poseval.render.depth_map import check_same_size

# Upper bound on symmetry-times-vertex pairs evaluated at once.
_PAIRS_PER_CHUNK = 1 << 20


def _vertex_array(vertices) -> np.ndarray:
    points = np.asarray(vertices, dtype=np.float64).reshape(-1, 3)
    if len(points) == 0:
        raise EmptyVertexSet("Pose errors need at least one model vertex")
    return points


def _symmetry_chunks(syms: SymmetrySet,
                     n_points: int) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    step = max(1, _PAIRS_PER_CHUNK // n_points)
    for start in range(0, len(syms), step):
        yield syms.rotations[start:start + step], syms.translations[start:start + step]


def mssd(est: RigidPose, gt: RigidPose, vertices, syms: SymmetrySet) -> float:
    """
    Maximum Symmetry-aware Surface Distance, in millimeters.

    ``min over S of max over x of |est(x) - gt(S(x))|``.  The difference is evaluated as
    ``(R_e - R_g R_S) x + (t_e - R_g t_S - t_g)``, so that poses differing only by a
    translation give exactly the length of that translation.

    Parameters
    ----------
    est, gt: RigidPose
        Estimated and ground-truth poses.
    vertices: array-like, n x 3
        Model vertices in millimeters, n >= 1.
    syms: SymmetrySet
        Symmetry transforms of the object, identity first.

    Returns
    -------
    float
        The error in millimeters.

    Raises
    ------
    EmptyVertexSet
        If `vertices` is empty.

    """
    points = _vertex_array(vertices)
    best = math.inf
    for rotations, translations in _symmetry_chunks(syms, len(points)):
        rotation_diff = est.rotation - gt.rotation @ rotations
        translation_diff = est.translation - translations @ gt.rotation.T - gt.translation
        offsets = np.einsum("kij,nj->kni", rotation_diff, points) + translation_diff[:, None, :]
        distances = np.sqrt((offsets ** 2).sum(axis=2))
        best = min(best, float(distances.max(axis=1).min()))
    return best


def mspd(est: RigidPose, gt: RigidPose, vertices, syms: SymmetrySet,
         intrinsics: CameraIntrinsics) -> float:
    """
    Maximum Symmetry-aware Projection Distance, in pixels.

    ``min over S of max over x of |proj(est(x)) - proj(gt(S(x)))|``, evaluated at the
    native resolution of `intrinsics`.

    Raises
    ------
    EmptyVertexSet
        If `vertices` is empty.
    NonPositiveDepth
        If a transformed vertex lies at or behind the camera plane.

    """
    points = _vertex_array(vertices)
    projected_est = project(intrinsics, transform_points(est, points))
    best = math.inf
    for rotations, translations in _symmetry_chunks(syms, len(points)):
        # gt(S(x)) = R_g R_S x + R_g t_S + t_g
        rotations = gt.rotation @ rotations
        translations = translations @ gt.rotation.T + gt.translation
        cam = np.einsum("kij,nj->kni", rotations, points) + translations[:, None, :]
        projected_gt = project(intrinsics, cam.reshape(-1, 3)).reshape(len(rotations), -1, 2)
        distances = np.sqrt(((projected_gt - projected_est) ** 2).sum(axis=2))
        best = min(best, float(distances.max(axis=1).min()))
    return best


def vsd_from_depth(depth_est: DepthMap, depth_gt: DepthMap, scene: DepthMap,
                   delta: float, taus: Sequence[float]) -> List[float]:
    """
    Visible Surface Discrepancy from already rendered depth maps.

    The ground-truth visibility mask is ``visibility_mask(depth_gt, scene, delta)``.  The
    estimate's mask additionally contains the ground-truth-visible pixels the estimate
    covers, so that surfaces hidden by the object itself are not counted as
    disagreement.  The error for one tolerance is the fraction of pixels in the union of
    both masks that are not in both masks with ``|depth_est - depth_gt| < tau``; it is 1
    when the union is empty.

    Parameters
    ----------
    depth_est, depth_gt: DepthMap
        Depth of the object rendered in the estimated and the ground-truth pose.
    scene: DepthMap
        Depth of the test image.
    delta: float
        Occlusion tolerance in millimeters.
    taus: Sequence[float]
        Misalignment tolerances in millimeters, each > 0.

    Returns
    -------
    List[float]
        One error in [0, 1] per tolerance, in the order given.

    """
    check_same_size(depth_est, scene)
    check_same_size(depth_gt, scene)
    for tau in taus:
        if not tau > 0:
            raise ValidationError("VSD tolerance must be positive, got {}".format(tau))
    visible_gt = visibility_mask(depth_gt, scene, delta)
    visible_est = visibility_mask(depth_est, scene, delta).union(
        visible_gt.intersection(depth_est.footprint()))
    union = visible_est.union(visible_gt).count()
    if union == 0:
        return [1.0] * len(taus)
    both = visible_est.intersection(visible_gt).bits
    misalignment = np.abs(depth_est.values - depth_gt.values)[both]
    return [(union - int(np.count_nonzero(misalignment < tau))) / union for tau in taus]


def vsd_errors(est: RigidPose, gt: RigidPose, mesh: TriMesh, intrinsics: CameraIntrinsics,
               scene_depth: DepthMap, delta: float, taus: Sequence[float]) -> List[float]:
    """Render both poses once and return the VSD for every tolerance in `taus`."""
    if (scene_depth.width, scene_depth.height) != (intrinsics.width, intrinsics.height):
        raise DimensionMismatch("Scene depth is {}x{} but the camera is {}x{}".format(
            scene_depth.width, scene_depth.height, intrinsics.width, intrinsics.height))
    depth_est = rasterize_depth(mesh, est, intrinsics)
    depth_gt = rasterize_depth(mesh, gt, intrinsics)
    return vsd_from_depth(depth_est, depth_gt, scene_depth, delta, taus)


def vsd(est: RigidPose, gt: RigidPose, mesh: TriMesh, intrinsics: CameraIntrinsics,
        scene_depth: DepthMap, delta: float, tau: float) -> float:
    """Visible Surface Discrepancy for one misalignment tolerance `tau` (millimeters)."""
    return vsd_errors(est, gt, mesh, intrinsics, scene_depth, delta, [tau])[0]


def iou_2d(a: Box2D, b: Box2D) -> float:
    """Intersection over union of two boxes; 0 when the union has no area."""
    overlap_w = max(0.0, min(a.x + a.w, b.x + b.w) - max(a.x, b.x))
    overlap_h = max(0.0, min(a.y + a.h, b.y + b.h) - max(a.y, b.y))
    intersection = overlap_w * overlap_h
    union = a.area + b.area - intersection
    if union <= 0:
        return 0.0
    return intersection / union
