"""Rigid transforms from object model space to camera space."""
from typing import Sequence, Union

import numpy as np

from poseval.exceptions import BadRotation

# Maximum deviation of R^T R from the identity (infinity norm) for R to count as a rotation.
ROTATION_TOLERANCE = 1e-6

ArrayLike = Union[np.ndarray, Sequence[float], Sequence[Sequence[float]]]


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def rotation_error(rotation: np.ndarray) -> float:
    """Return ``max |R^T R - I|``, the orthonormality defect of a 3x3 matrix."""
    return float(np.abs(rotation.T @ rotation - np.eye(3)).max())


def is_rotation(rotation: np.ndarray, tolerance: float = ROTATION_TOLERANCE) -> bool:
    """Whether `rotation` is orthonormal with determinant +1 within `tolerance`."""
    if rotation.shape != (3, 3) or not np.all(np.isfinite(rotation)):
        return False
    return rotation_error(rotation) <= tolerance and np.linalg.det(rotation) > 0


class RigidPose(object):
    """
    A rigid transform ``x -> R x + t`` from the object model frame to the camera frame.

    Rotations are validated, never re-orthonormalized: an input that is not a rotation
    within `ROTATION_TOLERANCE` is rejected.  Instances are immutable.

    Parameters
    ----------
    rotation: array-like, 3x3
        Rotation matrix (unitless).
    translation: array-like, 3
        Translation vector in millimeters.

    """

    __slots__ = ("_rotation", "_translation")

    def __init__(self, rotation: ArrayLike, translation: ArrayLike):
        rotation = np.array(rotation, dtype=np.float64)
        translation = np.array(translation, dtype=np.float64).reshape(-1)
        if rotation.shape != (3, 3):
            raise BadRotation("Rotation must be 3x3, got shape {}".format(rotation.shape))
        if translation.shape != (3,):
            raise BadRotation("Translation must have 3 components, got {}".format(
                translation.shape[0]))
        if not np.all(np.isfinite(translation)):
            raise BadRotation("Translation must be finite: {}".format(translation.tolist()))
        if not is_rotation(rotation):
            raise BadRotation("Not a rotation matrix (|R^T R - I| = {:.3g}, det = {:.6g})".format(
                rotation_error(rotation) if np.all(np.isfinite(rotation)) else float("nan"),
                np.linalg.det(rotation) if np.all(np.isfinite(rotation)) else float("nan")))
        self._rotation = _frozen(rotation)
        self._translation = _frozen(translation)

    @classmethod
    def identity(cls) -> "RigidPose":
        """Return the identity transform."""
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def from_flat(cls, rotation: Sequence[float], translation: Sequence[float]) -> "RigidPose":
        """Build a pose from 9 row-major rotation entries and 3 translation entries."""
        rotation = np.asarray(rotation, dtype=np.float64).reshape(-1)
        if rotation.shape != (9,):
            raise BadRotation("Rotation must have 9 entries, got {}".format(rotation.shape[0]))
        return cls(rotation.reshape(3, 3), translation)

    @classmethod
    def from_matrix(cls, matrix: ArrayLike) -> "RigidPose":
        """Build a pose from a 4x4 homogeneous matrix; the bottom row is not checked."""
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.shape != (4, 4):
            raise BadRotation("Homogeneous transform must be 4x4, got {}".format(matrix.shape))
        return cls(matrix[:3, :3], matrix[:3, 3])

    @property
    def rotation(self) -> np.ndarray:
        """Read-only 3x3 rotation matrix."""
        return self._rotation

    @property
    def translation(self) -> np.ndarray:
        """Read-only translation vector in millimeters."""
        return self._translation

    def as_matrix(self) -> np.ndarray:
        """Return the 4x4 homogeneous matrix of this transform."""
        matrix = np.eye(4)
        matrix[:3, :3] = self._rotation
        matrix[:3, 3] = self._translation
        return matrix

    def compose(self, other: "RigidPose") -> "RigidPose":
        """Return ``self ∘ other``: apply `other` first, then `self`."""
        return RigidPose(self._rotation @ other.rotation,
                         self._rotation @ other.translation + self._translation)

    def inverse(self) -> "RigidPose":
        """Return the inverse transform."""
        rotation_t = self._rotation.T
        return RigidPose(rotation_t, -rotation_t @ self._translation)

    def allclose(self, other: "RigidPose", atol: float = 1e-9) -> bool:
        """Whether both rotation and translation agree within `atol`."""
        return bool(np.allclose(self._rotation, other.rotation, rtol=0.0, atol=atol)
                    and np.allclose(self._translation, other.translation, rtol=0.0, atol=atol))

    def __eq__(self, other):
        if not isinstance(other, RigidPose):
            return False
        return bool(np.array_equal(self._rotation, other.rotation)
                    and np.array_equal(self._translation, other.translation))

    def __hash__(self):
        return hash((self._rotation.tobytes(), self._translation.tobytes()))

    def __repr__(self):
        return "RigidPose(rotation={}, translation={})".format(
            self._rotation.tolist(), self._translation.tolist())


def transform_points(pose: RigidPose, points: ArrayLike) -> np.ndarray:
    """
    Apply a rigid transform to 3D points.

    Parameters
    ----------
    pose: RigidPose
        The transform to apply.
    points: array-like, n x 3
        Points in millimeters.

    Returns
    -------
    np.ndarray
        n x 3 array of ``R x + t`` for every input point, in input order.

    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    return points @ pose.rotation.T + pose.translation
