"""Tests of MSSD, MSPD, VSD and box IoU."""
import itertools

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from poseval.demo.shapes import box_mesh
from poseval.exceptions import DimensionMismatch, EmptyVertexSet, NonPositiveDepth, \
    ValidationError
from poseval.geom import CameraIntrinsics, RigidPose, SymmetrySet, SymmetrySpec, \
    discretize_symmetries, project, transform_points
from poseval.pose_error import Box2D, iou_2d, mspd, mssd, vsd, vsd_errors, vsd_from_depth
from poseval.render import DepthMap, rasterize_depth, render_scene

K = CameraIntrinsics(fx=500, fy=500, cx=320, cy=240, width=640, height=480)
Z_180 = RigidPose([[-1, 0, 0], [0, -1, 0], [0, 0, 1]], (0, 0, 0))
X_180 = RigidPose([[1, 0, 0], [0, -1, 0], [0, 0, -1]], (0, 0, 0))
NO_SYMS = SymmetrySet.identity_only()
CUBE = box_mesh((-30, -30, -30), (30, 30, 30))


def _rotation(rng):
    return Rotation.random(random_state=int(rng.integers(1 << 31))).as_matrix()


def _mssd_oracle(est, gt, points, syms):
    return min(max(np.linalg.norm(transform_points(est, [x])[0]
                                  - transform_points(gt.compose(s), [x])[0])
                   for x in points)
               for s in syms)


def _mspd_oracle(est, gt, points, syms, camera):
    return min(max(np.linalg.norm(project(camera, transform_points(est, [x]))[0]
                                  - project(camera, transform_points(gt.compose(s), [x]))[0])
                   for x in points)
               for s in syms)


def test_mssd_examples():
    """Identical poses, a pure translation and a rotation absorbed by a symmetry."""
    points = CUBE.vertices
    pose = RigidPose(Z_180.rotation, (5, 6, 700))
    assert mssd(pose, pose, points, NO_SYMS) == 0
    shifted = RigidPose(np.eye(3), (3, 4, 0))
    assert mssd(shifted, RigidPose.identity(), points, NO_SYMS) == 5.0
    syms = discretize_symmetries(SymmetrySpec(discrete=[Z_180]), 100.0)
    assert mssd(Z_180, RigidPose.identity(), points, syms) == pytest.approx(0, abs=1e-12)
    assert mssd(Z_180, RigidPose.identity(), points, NO_SYMS) > 0
    with pytest.raises(EmptyVertexSet):
        mssd(pose, pose, np.empty((0, 3)), NO_SYMS)


def test_mspd_examples():
    """Identical poses, a sideways shift and a pose behind the camera."""
    points = CUBE.vertices
    gt = RigidPose(np.eye(3), (0, 0, 1000))
    assert mspd(gt, gt, points, NO_SYMS, K) == 0
    flat = np.array([(x, y, 0) for x in (-20, 0, 20) for y in (-20, 20)], dtype=float)
    est = RigidPose(np.eye(3), (10, 0, 1000))
    assert mspd(est, gt, flat, NO_SYMS, K) == pytest.approx(5.0, rel=1e-12)
    syms = discretize_symmetries(SymmetrySpec(discrete=[Z_180]), 100.0)
    assert mspd(gt.compose(Z_180), gt, points, syms, K) == pytest.approx(0, abs=1e-9)
    with pytest.raises(NonPositiveDepth):
        mspd(gt, RigidPose(np.eye(3), (0, 0, -1000)), points, NO_SYMS, K)
    with pytest.raises(EmptyVertexSet):
        mspd(gt, gt, [], NO_SYMS, K)


def test_against_brute_force():
    """Vectorized MSSD and MSPD agree with a double loop over symmetries and vertices."""
    rng = np.random.default_rng(2024)
    spec = SymmetrySpec(discrete=[Z_180, X_180])
    with_syms = discretize_symmetries(spec, 80.0)
    for case in range(1000):
        points = rng.uniform(-40, 40, size=(20, 3))
        syms = with_syms if case % 2 else NO_SYMS
        gt = RigidPose(_rotation(rng), rng.uniform([-100, -100, 600], [100, 100, 1200]))
        est = RigidPose(_rotation(rng), rng.uniform([-100, -100, 600], [100, 100, 1200]))
        assert mssd(est, gt, points, syms) == pytest.approx(
            _mssd_oracle(est, gt, points, syms), rel=1e-9)
        assert mspd(est, gt, points, syms, K) == pytest.approx(
            _mspd_oracle(est, gt, points, syms, K), rel=1e-9)


def test_symmetry_invariance():
    """Composing the ground truth with a symmetry leaves the errors unchanged."""
    rng = np.random.default_rng(17)
    syms = discretize_symmetries(SymmetrySpec(discrete=[Z_180]), 100.0)
    points = rng.uniform(-30, 30, size=(15, 3))
    for _ in range(50):
        gt = RigidPose(_rotation(rng), rng.uniform([-50, -50, 700], [50, 50, 900]))
        est = RigidPose(_rotation(rng), rng.uniform([-50, -50, 700], [50, 50, 900]))
        for s in syms:
            assert mssd(est, gt.compose(s), points, syms) == pytest.approx(
                mssd(est, gt, points, syms), rel=1e-9)
            assert mspd(est, gt.compose(s), points, syms, K) == pytest.approx(
                mspd(est, gt, points, syms, K), rel=1e-9)
        assert mssd(est, gt, points, NO_SYMS) == pytest.approx(
            mssd(gt, est, points, NO_SYMS), rel=1e-9)


def test_vsd_identical_and_disjoint():
    """Identical renders give 0 and non-overlapping visible objects give 1."""
    gt = RigidPose(_rotation(np.random.default_rng(1)), (0, 0, 800))
    scene = rasterize_depth(CUBE, gt, K)
    assert vsd(gt, gt, CUBE, K, scene, 15, 20) == 0
    est = RigidPose(gt.rotation, (250, 0, 800))
    scene = render_scene([(CUBE, gt), (CUBE, est)], K)
    assert vsd(est, gt, CUBE, K, scene, 15, 20) == 1
    # both poses outside the view: nothing can be verified
    away = RigidPose(np.eye(3), (10000, 0, 800))
    assert vsd(away, away, CUBE, K, DepthMap.zeros(640, 480), 15, 20) == 1


def test_vsd_half_matching():
    """Half of the union pixels agree within tolerance."""
    est = DepthMap([[100, 100, 0, 0]] * 4)
    gt = DepthMap([[100, 130, 0, 0]] * 4)
    scene = DepthMap.zeros(4, 4)
    assert vsd_from_depth(est, gt, scene, 15, [20]) == [0.5]
    assert vsd_from_depth(est, gt, scene, 15, [20, 40, 10]) == [0.5, 0.0, 0.5]


def test_vsd_against_brute_force():
    """Pixel-level VSD agrees with a per-pixel loop and decreases with tolerance."""
    rng = np.random.default_rng(99)
    taus = [5.0, 10.0, 20.0, 40.0]
    for _ in range(200):
        maps = [rng.choice([0.0, 1.0], size=(16, 16), p=[0.4, 0.6])
                * rng.uniform(500, 560, size=(16, 16)) for _ in range(3)]
        est, gt, scene = (DepthMap(m) for m in maps)
        delta = 15.0
        expected = []
        for tau in taus:
            union = matches = 0
            for v, u in itertools.product(range(16), range(16)):
                e, g, s = maps[0][v, u], maps[1][v, u], maps[2][v, u]
                vis_g = g > 0 and (s == 0 or g <= s + delta)
                vis_e = e > 0 and ((s == 0 or e <= s + delta) or vis_g)
                if vis_g or vis_e:
                    union += 1
                    if vis_g and vis_e and abs(e - g) < tau:
                        matches += 1
            expected.append(1.0 if union == 0 else (union - matches) / union)
        errors = vsd_from_depth(est, gt, scene, delta, taus)
        assert errors == expected
        assert errors == sorted(errors, reverse=True)
        assert all(0 <= e <= 1 for e in errors)


def test_vsd_errors_renders_once_for_all_taus():
    """The multi-tolerance form agrees with the one-tolerance form."""
    gt = RigidPose(np.eye(3), (0, 0, 800))
    est = RigidPose(Rotation.from_euler("y", 20, degrees=True).as_matrix(), (5, 0, 805))
    scene = rasterize_depth(CUBE, gt, K)
    taus = [3.0, 6.0, 12.0, 24.0]
    errors = vsd_errors(est, gt, CUBE, K, scene, 15, taus)
    assert errors == [vsd(est, gt, CUBE, K, scene, 15, tau) for tau in taus]
    assert 0 < errors[0] and errors == sorted(errors, reverse=True)
    with pytest.raises(DimensionMismatch):
        vsd(est, gt, CUBE, K, DepthMap.zeros(320, 240), 15, 10)


def test_iou():
    """Identical, half-shifted and disjoint boxes."""
    box = Box2D(0, 0, 10, 10)
    assert iou_2d(box, box) == 1.0
    assert iou_2d(box, Box2D(5, 0, 10, 10)) == pytest.approx(50 / 150)
    assert iou_2d(Box2D(5, 0, 10, 10), box) == iou_2d(box, Box2D(5, 0, 10, 10))
    assert iou_2d(box, Box2D(20, 20, 5, 5)) == 0.0
    assert iou_2d(Box2D(1, 1, 0, 0), Box2D(1, 1, 0, 0)) == 0.0


def test_box():
    """Boxes validate their extent and are immutable."""
    with pytest.raises(ValidationError):
        Box2D(0, 0, -1, 3)
    with pytest.raises(ValidationError):
        Box2D.from_list([0, 0, 1])
    box = Box2D.from_list([1, 2, 3, 4])
    assert box.as_list() == [1.0, 2.0, 3.0, 4.0]
    assert box.area == 12
    with pytest.raises(AttributeError):
        box.w = 5
