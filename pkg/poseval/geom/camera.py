"""Pinhole camera intrinsics."""
import numpy as np

from poseval.exceptions import NonPositiveDepth, ValidationError

# Image width at which the MSPD thresholds are defined.
REFERENCE_WIDTH = 640.0


class CameraIntrinsics(object):
    """
    Intrinsic parameters of a pinhole camera and the size of its images.

    Parameters
    ----------
    fx, fy: float
        Focal lengths in pixels.
    cx, cy: float
        Principal point in pixels; pixel centers sit at integer coordinates.
    width, height: int
        Image size in pixels.

    """

    __slots__ = ("fx", "fy", "cx", "cy", "width", "height")

    def __init__(self, *, fx: float, fy: float, cx: float, cy: float, width: int, height: int):
        if not (fx > 0 and fy > 0):
            raise ValidationError("Focal lengths must be positive: fx={}, fy={}".format(fx, fy))
        if int(width) != width or int(height) != height or width < 1 or height < 1:
            raise ValidationError("Image size must be positive integers: {}x{}".format(
                width, height))
        if not (np.isfinite(cx) and np.isfinite(cy)):
            raise ValidationError("Principal point must be finite")
        object.__setattr__(self, "fx", float(fx))
        object.__setattr__(self, "fy", float(fy))
        object.__setattr__(self, "cx", float(cx))
        object.__setattr__(self, "cy", float(cy))
        object.__setattr__(self, "width", int(width))
        object.__setattr__(self, "height", int(height))

    def __setattr__(self, key, value):
        raise AttributeError("CameraIntrinsics is immutable")

    @classmethod
    def from_matrix(cls, matrix, *, width: int, height: int) -> "CameraIntrinsics":
        """Build intrinsics from a 3x3 K matrix (or its 9 row-major entries)."""
        k = np.asarray(matrix, dtype=np.float64).reshape(-1)
        if k.shape != (9,):
            raise ValidationError("K must have 9 entries, got {}".format(k.shape[0]))
        if k[1] != 0 or k[3] != 0 or k[6] != 0 or k[7] != 0 or k[8] != 1:
            raise ValidationError("K must be upper triangular with zero skew: {}".format(
                k.tolist()))
        return cls(fx=k[0], fy=k[4], cx=k[2], cy=k[5], width=width, height=height)

    @property
    def matrix(self) -> np.ndarray:
        """The 3x3 intrinsic matrix K."""
        return np.array([[self.fx, 0.0, self.cx],
                         [0.0, self.fy, self.cy],
                         [0.0, 0.0, 1.0]])

    @property
    def scale_factor(self) -> float:
        """Ratio of this image width to the 640 px reference width."""
        return self.width / REFERENCE_WIDTH

    def __eq__(self, other):
        if not isinstance(other, CameraIntrinsics):
            return False
        return all(getattr(self, name) == getattr(other, name) for name in self.__slots__)

    def __hash__(self):
        return hash(tuple(getattr(self, name) for name in self.__slots__))

    def __repr__(self):
        return "CameraIntrinsics({})".format(
            ", ".join("{}={}".format(name, getattr(self, name)) for name in self.__slots__))


def project(intrinsics: CameraIntrinsics, points_cam) -> np.ndarray:
    """
    Project camera-frame points to pixel coordinates.

    Parameters
    ----------
    intrinsics: CameraIntrinsics
        The camera.
    points_cam: array-like, n x 3
        Points in the camera frame, millimeters.

    Returns
    -------
    np.ndarray
        n x 2 array of ``(fx x / z + cx, fy y / z + cy)``.

    Raises
    ------
    NonPositiveDepth
        If any point has ``z <= 0``.

    """
    points_cam = np.asarray(points_cam, dtype=np.float64).reshape(-1, 3)
    z = points_cam[:, 2]
    if np.any(z <= 0):
        bad = int(np.argmax(z <= 0))
        raise NonPositiveDepth("Point {} has non-positive depth {}".format(bad, z[bad]))
    u = intrinsics.fx * points_cam[:, 0] / z + intrinsics.cx
    v = intrinsics.fy * points_cam[:, 1] / z + intrinsics.cy
    return np.stack([u, v], axis=1)
