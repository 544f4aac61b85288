"""Closed triangle meshes of simple solids."""
from typing import Sequence

import numpy as np

from poseval.geom import TriMesh

# Corner k of a box has bit 0 -> x, bit 1 -> y, bit 2 -> z set to the upper bound.
_BOX_FACES = np.array([
    (0, 2, 3), (0, 3, 1),  # z low
    (4, 5, 7), (4, 7, 6),  # z high
    (0, 1, 5), (0, 5, 4),  # y low
    (2, 6, 7), (2, 7, 3),  # y high
    (0, 4, 6), (0, 6, 2),  # x low
    (1, 3, 7), (1, 7, 5),  # x high
])


def box_mesh(lower: Sequence[float], upper: Sequence[float]) -> TriMesh:
    """An axis-aligned box with outward-facing triangles."""
    lower = np.asarray(lower, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    corners = [[upper[axis] if k >> axis & 1 else lower[axis] for axis in range(3)]
               for k in range(8)]
    return TriMesh(corners, _BOX_FACES)


def merge_meshes(*meshes: TriMesh) -> TriMesh:
    """Concatenate meshes into one, keeping their triangles in order."""
    vertices, triangles, offset = [], [], 0
    for mesh in meshes:
        vertices.append(mesh.vertices)
        triangles.append(mesh.triangles + offset)
        offset += len(mesh.vertices)
    return TriMesh(np.concatenate(vertices), np.concatenate(triangles))


def centered(mesh: TriMesh) -> TriMesh:
    """Translate a mesh so that the center of its bounding box is the origin."""
    vertices = mesh.vertices
    middle = (vertices.min(axis=0) + vertices.max(axis=0)) / 2.0
    return TriMesh(vertices - middle, mesh.triangles)
