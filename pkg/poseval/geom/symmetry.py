"""Global object symmetries and their discretization."""
import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from poseval.exceptions import InvalidSpec, NonUnitAxis, ValidationError
from poseval.geom.pose import RigidPose

AXIS_TOLERANCE = 1e-6
DEFAULT_MAX_STEP_FRACTION = 0.01
MAX_STEPS_PER_AXIS = 64
# Two transforms closer than this (entry-wise) are the same transform.
DUPLICATE_TOLERANCE = 1e-9


class ContinuousSymmetry(object):
    """
    A continuous rotational symmetry about an axis.

    Parameters
    ----------
    axis: array-like, 3
        Unit direction of the axis.
    offset: array-like, 3
        A point on the axis, millimeters.

    """

    __slots__ = ("axis", "offset")

    def __init__(self, axis, offset=(0.0, 0.0, 0.0)):
        axis = np.array(axis, dtype=np.float64).reshape(-1)
        offset = np.array(offset, dtype=np.float64).reshape(-1)
        if axis.shape != (3,) or offset.shape != (3,):
            raise InvalidSpec("Axis and offset must both have 3 components")
        if not (np.all(np.isfinite(axis)) and np.all(np.isfinite(offset))):
            raise InvalidSpec("Axis and offset must be finite")
        norm = float(np.linalg.norm(axis))
        if abs(norm - 1.0) > AXIS_TOLERANCE:
            raise NonUnitAxis("Symmetry axis {} has norm {}, expected 1".format(
                axis.tolist(), norm))
        axis.setflags(write=False)
        offset.setflags(write=False)
        self.axis = axis
        self.offset = offset

    def rotation_about(self, angle: float) -> RigidPose:
        """The rigid transform rotating by `angle` radians about this axis."""
        x, y, z = self.axis
        c, s = math.cos(angle), math.sin(angle)
        cross = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
        rotation = c * np.eye(3) + s * cross + (1.0 - c) * np.outer(self.axis, self.axis)
        return RigidPose(rotation, self.offset - rotation @ self.offset)

    def __repr__(self):
        return "ContinuousSymmetry(axis={}, offset={})".format(
            self.axis.tolist(), self.offset.tolist())


class SymmetrySpec(object):
    """
    The symmetry annotation of one object, as stored with the dataset.

    Parameters
    ----------
    discrete: Sequence[RigidPose]
        Discrete symmetry transforms, in file order.
    continuous: Sequence[ContinuousSymmetry]
        Continuous rotational symmetries.

    """

    __slots__ = ("discrete", "continuous")

    def __init__(self, discrete: Sequence[RigidPose] = (),
                 continuous: Sequence[ContinuousSymmetry] = ()):
        for transform in discrete:
            if not isinstance(transform, RigidPose):
                raise TypeError("Discrete symmetries must be RigidPose, got {}".format(
                    type(transform)))
        for symmetry in continuous:
            if not isinstance(symmetry, ContinuousSymmetry):
                raise TypeError("Continuous symmetries must be ContinuousSymmetry, got {}".format(
                    type(symmetry)))
        self.discrete = tuple(discrete)
        self.continuous = tuple(continuous)

    @property
    def is_empty(self) -> bool:
        """Whether the object has no annotated symmetry."""
        return not self.discrete and not self.continuous


class SymmetrySet(object):
    """
    A finite set of symmetry transforms over which MSSD and MSPD minimize.

    The first transform is always the identity.

    Parameters
    ----------
    transforms: Sequence[RigidPose]
        The transforms, identity first.

    """

    __slots__ = ("_transforms", "_rotations", "_translations")

    def __init__(self, transforms: Sequence[RigidPose]):
        transforms = tuple(transforms)
        if not transforms:
            raise ValidationError("A symmetry set needs at least the identity")
        if transforms[0] != RigidPose.identity():
            raise ValidationError("The first symmetry transform must be the identity")
        self._transforms = transforms
        self._rotations = np.stack([t.rotation for t in transforms])
        self._translations = np.stack([t.translation for t in transforms])
        self._rotations.setflags(write=False)
        self._translations.setflags(write=False)

    @classmethod
    def identity_only(cls) -> "SymmetrySet":
        """The symmetry set of an object without symmetries."""
        return cls([RigidPose.identity()])

    @property
    def transforms(self) -> Tuple[RigidPose, ...]:
        """The transforms, identity first."""
        return self._transforms

    @property
    def rotations(self) -> np.ndarray:
        """k x 3 x 3 stacked rotations."""
        return self._rotations

    @property
    def translations(self) -> np.ndarray:
        """k x 3 stacked translations."""
        return self._translations

    def __len__(self):
        return len(self._transforms)

    def __iter__(self):
        return iter(self._transforms)

    def __repr__(self):
        return "SymmetrySet({} transforms)".format(len(self._transforms))


def steps_per_axis(diameter: float, max_step_fraction: float) -> int:
    """
    Number of samples of a continuous symmetry, the identity included.

    A rotation by ``theta`` moves a surface point at most ``2 (d / 2) sin(theta / 2)``, so
    ``theta* = 2 asin(max_step_fraction)`` keeps that displacement within
    ``max_step_fraction * d``.
    """
    max_angle = 2.0 * math.asin(max_step_fraction)
    return min(MAX_STEPS_PER_AXIS, int(math.ceil(2.0 * math.pi / max_angle)))


def _dedupe(transforms: Iterable[RigidPose]) -> List[RigidPose]:
    kept = []
    keys = np.empty((0, 12))
    for candidate in transforms:
        key = np.concatenate([candidate.rotation.reshape(-1), candidate.translation])
        if len(keys) and np.any(np.abs(keys - key).max(axis=1) <= DUPLICATE_TOLERANCE):
            continue
        kept.append(candidate)
        keys = np.vstack([keys, key])
    return kept


def discretize_symmetries(spec: SymmetrySpec, diameter: float,
                          max_step_fraction: float = DEFAULT_MAX_STEP_FRACTION) -> SymmetrySet:
    """
    Turn a symmetry annotation into the finite set of transforms MSSD and MSPD minimize over.

    Every discrete transform (identity first, then file order) is composed with every
    continuous sample (identity first, then increasing angle per axis); duplicates are
    dropped keeping the first occurrence.

    Parameters
    ----------
    spec: SymmetrySpec
        The annotation.
    diameter: float
        Object diameter in millimeters, > 0.
    max_step_fraction: float
        Largest allowed surface displacement between neighbouring samples, as a fraction
        of the diameter, in (0, 1].

    Returns
    -------
    SymmetrySet
        The discretized symmetries.

    """
    if not diameter > 0:
        raise InvalidSpec("Diameter must be positive, got {}".format(diameter))
    if not 0 < max_step_fraction <= 1:
        raise InvalidSpec("max_step_fraction must be in (0, 1], got {}".format(max_step_fraction))

    discrete = [RigidPose.identity()] + list(spec.discrete)
    continuous = [RigidPose.identity()]
    for symmetry in spec.continuous:
        count = steps_per_axis(diameter, max_step_fraction)
        continuous.extend(symmetry.rotation_about(k * 2.0 * math.pi / count)
                          for k in range(1, count))

    combined = (d.compose(c) for d in discrete for c in continuous)
    return SymmetrySet(_dedupe(combined))
