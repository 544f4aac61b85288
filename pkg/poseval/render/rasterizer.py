"""
Software depth rasterizer.

Pixel ``(u, v)`` is sampled at its center, which sits at image coordinates ``(u, v)``,
the frame `poseval.geom.project` returns.  A pixel center on a shared triangle edge
belongs to exactly one of the triangles (top-left rule), so neighbouring triangles
leave neither gaps nor double coverage.  Triangles are clipped against the near
plane, there is no far plane and no face culling.
"""
import math
from logging import getLogger
from typing import Iterable, List, Tuple

import numpy as np

from poseval.exceptions import ValidationError
from poseval.geom import CameraIntrinsics, RigidPose, TriMesh, transform_points
from poseval.render.depth_map import DepthMap

logger = getLogger(__name__)

# Near clipping plane, millimeters.
ZNEAR = 10.0


def _edge(a, b, px, py):
    """Signed edge function of the directed edge a -> b at the points (px, py)."""
    # Shared edges are evaluated in one canonical direction so both triangles agree bit-wise.
    if (a[0], a[1]) > (b[0], b[1]):
        return -_edge(b, a, px, py)
    return (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0])


def _covers(weight: np.ndarray, a, b) -> np.ndarray:
    dx, dy = b[0] - a[0], b[1] - a[1]
    # top or left edge, with rows growing downwards
    if dy < 0 or (dy == 0 and dx > 0):
        return weight >= 0
    return weight > 0


def _clip_near(triangle: np.ndarray, znear: float) -> List[np.ndarray]:
    """Clip a camera-space triangle to ``z >= znear`` and fan-triangulate the result."""
    polygon = []
    for current, following in zip(triangle, np.roll(triangle, -1, axis=0)):
        current_in = current[2] >= znear
        if current_in:
            polygon.append(current)
        if current_in != (following[2] >= znear):
            t = (znear - current[2]) / (following[2] - current[2])
            point = current + t * (following - current)
            point[2] = znear
            polygon.append(point)
    return [np.stack([polygon[0], polygon[i], polygon[i + 1]])
            for i in range(1, len(polygon) - 1)]


class _DepthBuffer(object):

    def __init__(self, intrinsics: CameraIntrinsics, znear: float):
        if not (math.isfinite(znear) and znear > 0):
            raise ValidationError("znear must be positive, got {}".format(znear))
        self.intrinsics = intrinsics
        self.znear = znear
        self.depth = np.zeros((intrinsics.height, intrinsics.width))

    def draw_mesh(self, mesh: TriMesh, pose: RigidPose):
        if len(mesh.triangles) == 0:
            return
        corners = transform_points(pose, mesh.vertices)[mesh.triangles]
        in_front = corners[:, :, 2] >= self.znear
        for index in np.flatnonzero(np.any(in_front, axis=1)):
            if in_front[index].all():
                self._draw(corners[index])
            else:
                for piece in _clip_near(corners[index], self.znear):
                    self._draw(piece)

    def _draw(self, triangle: np.ndarray):
        cam = self.intrinsics
        z = triangle[:, 2]
        us = cam.fx * triangle[:, 0] / z + cam.cx
        vs = cam.fy * triangle[:, 1] / z + cam.cy
        a, b, c = (us[0], vs[0]), (us[1], vs[1]), (us[2], vs[2])
        area = _edge(a, b, c[0], c[1])
        if area == 0:
            return
        z_a, z_b, z_c = z
        if area < 0:
            b, c = c, b
            z_b, z_c = z_c, z_b
            area = -area

        u_lo, u_hi = max(0, math.ceil(us.min())), min(cam.width - 1, math.floor(us.max()))
        v_lo, v_hi = max(0, math.ceil(vs.min())), min(cam.height - 1, math.floor(vs.max()))
        if u_lo > u_hi or v_lo > v_hi:
            return
        px, py = np.meshgrid(np.arange(u_lo, u_hi + 1, dtype=np.float64),
                             np.arange(v_lo, v_hi + 1, dtype=np.float64))
        w_a = _edge(b, c, px, py)
        w_b = _edge(c, a, px, py)
        w_c = _edge(a, b, px, py)
        inside = _covers(w_a, b, c) & _covers(w_b, c, a) & _covers(w_c, a, b)
        if not inside.any():
            return

        if z_a == z_b == z_c:
            depth = np.full(px.shape, z_a)
        else:
            # perspective-correct: 1/z is affine in screen space
            depth = area / (w_a / z_a + w_b / z_b + w_c / z_c)
        region = self.depth[v_lo:v_hi + 1, u_lo:u_hi + 1]
        closer = inside & ((region == 0) | (depth < region))
        region[closer] = depth[closer]


def render_scene(instances: Iterable[Tuple[TriMesh, RigidPose]], intrinsics: CameraIntrinsics,
                 znear: float = ZNEAR) -> DepthMap:
    """
    Render several posed meshes into a single z-buffer.

    Parameters
    ----------
    instances: Iterable[Tuple[TriMesh, RigidPose]]
        Meshes with their model-to-camera poses, drawn in the given order.
    intrinsics: CameraIntrinsics
        The camera; its width and height set the image size.
    znear: float
        Near clipping plane in millimeters.

    Returns
    -------
    DepthMap
        Per-pixel depth of the nearest surface, 0 where nothing was drawn.

    """
    buffer = _DepthBuffer(intrinsics, znear)
    count = 0
    for mesh, pose in instances:
        buffer.draw_mesh(mesh, pose)
        count += 1
    logger.debug("Rendered {} instance(s) at {}x{}".format(
        count, intrinsics.width, intrinsics.height))
    return DepthMap(buffer.depth)


def rasterize_depth(mesh: TriMesh, pose: RigidPose, intrinsics: CameraIntrinsics,
                    znear: float = ZNEAR) -> DepthMap:
    """Render the depth of one posed mesh; see `render_scene`."""
    return render_scene([(mesh, pose)], intrinsics, znear)
