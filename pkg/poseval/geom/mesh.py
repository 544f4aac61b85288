"""Triangle meshes of object models."""
from logging import getLogger

import numpy as np
from scipy.spatial import ConvexHull, QhullError
from scipy.spatial.distance import pdist

from poseval.exceptions import IndexOutOfRange, ValidationError

logger = getLogger(__name__)

# Above this many hull vertices the pairwise distances are computed in blocks.
_PDIST_LIMIT = 4096


class TriMesh(object):
    """
    A triangle mesh in the object model frame.

    Parameters
    ----------
    vertices: array-like, n x 3
        Vertex coordinates in millimeters, n >= 1.
    triangles: array-like, m x 3
        Vertex index triples; may be empty.

    """

    __slots__ = ("_vertices", "_triangles")

    def __init__(self, vertices, triangles=()):
        vertices = np.array(vertices, dtype=np.float64).reshape(-1, 3)
        triangles = np.array(triangles, dtype=np.int64).reshape(-1, 3)
        if len(vertices) < 1:
            raise ValidationError("A mesh needs at least one vertex")
        if not np.all(np.isfinite(vertices)):
            raise ValidationError("Mesh vertices must be finite")
        if len(triangles) and (triangles.min() < 0 or triangles.max() >= len(vertices)):
            raise IndexOutOfRange("Triangle index out of range for {} vertices".format(
                len(vertices)))
        vertices.setflags(write=False)
        triangles.setflags(write=False)
        self._vertices = vertices
        self._triangles = triangles

    @property
    def vertices(self) -> np.ndarray:
        """Read-only n x 3 vertex array (millimeters)."""
        return self._vertices

    @property
    def triangles(self) -> np.ndarray:
        """Read-only m x 3 array of vertex indices."""
        return self._triangles

    def scaled(self, factor: float) -> "TriMesh":
        """Return a copy with every coordinate multiplied by `factor`."""
        return TriMesh(self._vertices * factor, self._triangles)

    def __eq__(self, other):
        if not isinstance(other, TriMesh):
            return False
        return bool(np.array_equal(self._vertices, other.vertices)
                    and np.array_equal(self._triangles, other.triangles))

    __hash__ = None

    def __repr__(self):
        return "TriMesh({} vertices, {} triangles)".format(
            len(self._vertices), len(self._triangles))


def _max_pairwise_distance(points: np.ndarray) -> float:
    if len(points) < 2:
        return 0.0
    if len(points) <= _PDIST_LIMIT:
        return float(pdist(points).max())
    best = 0.0
    for start in range(0, len(points), _PDIST_LIMIT):
        block = points[start:start + _PDIST_LIMIT]
        diff = block[:, None, :] - points[None, :, :]
        best = max(best, float(np.sqrt((diff ** 2).sum(axis=2).max())))
    return best


def mesh_diameter(mesh: TriMesh) -> float:
    """
    Return the largest distance between two vertices of `mesh`, in millimeters.

    The farthest pair always lies on the convex hull, so only hull vertices are compared;
    flat or tiny meshes for which no hull exists are compared exhaustively.
    """
    points = mesh.vertices
    if len(points) >= 4:
        try:
            points = points[ConvexHull(points).vertices]
        except QhullError:
            logger.debug("Degenerate hull for {}; comparing all vertices".format(mesh))
    return _max_pairwise_distance(points)
