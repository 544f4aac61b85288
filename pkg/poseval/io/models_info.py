"""Object diameters and symmetry annotations (``models_info.json``)."""
import json
import math
from logging import getLogger
from typing import Dict, Iterator, Mapping

import numpy as np

from poseval.exceptions import BadRotation, BadSymmetryMatrix, InvalidSpec, MissingDiameter, \
    UnknownObject, ValidationError
from poseval.geom import ContinuousSymmetry, RigidPose, SymmetrySpec

logger = getLogger(__name__)

# Largest deviation of a symmetry matrix's bottom row from [0, 0, 0, 1].
BOTTOM_ROW_TOLERANCE = 1e-9

_KNOWN_KEYS = {"diameter", "symmetries_discrete", "symmetries_continuous",
               "min_x", "min_y", "min_z", "size_x", "size_y", "size_z"}


class ObjectInfo(object):
    """
    What the evaluation needs to know about one object model.

    Parameters
    ----------
    diameter: float
        Largest distance between two model vertices, millimeters.
    symmetries: SymmetrySpec
        The annotated global symmetries.

    """

    __slots__ = ("diameter", "symmetries")

    def __init__(self, diameter: float, symmetries: SymmetrySpec = SymmetrySpec()):
        diameter = float(diameter)
        if not (math.isfinite(diameter) and diameter > 0):
            raise ValidationError("Diameter must be positive, got {}".format(diameter))
        self.diameter = diameter
        self.symmetries = symmetries

    def __repr__(self):
        return "ObjectInfo(diameter={}, {} discrete, {} continuous)".format(
            self.diameter, len(self.symmetries.discrete), len(self.symmetries.continuous))


class ModelsInfo(Mapping):
    """Read-only mapping of object id to `ObjectInfo`, iterated in ascending id order."""

    def __init__(self, objects: Mapping[int, ObjectInfo]):
        self._objects: Dict[int, ObjectInfo] = {int(k): objects[k] for k in sorted(objects)}

    def __getitem__(self, obj_id: int) -> ObjectInfo:
        try:
            return self._objects[obj_id]
        except KeyError:
            raise UnknownObject("Object {} is not described in models_info".format(obj_id))

    def __iter__(self) -> Iterator[int]:
        return iter(self._objects)

    def __len__(self):
        return len(self._objects)

    def __repr__(self):
        return "ModelsInfo(objects={})".format(list(self._objects))


def _discrete(obj_id, values) -> RigidPose:
    matrix = np.asarray(values, dtype=np.float64).reshape(-1)
    if matrix.shape != (16,):
        raise BadSymmetryMatrix("Object {}: a symmetry matrix needs 16 entries, got {}".format(
            obj_id, matrix.shape[0]))
    matrix = matrix.reshape(4, 4)
    if np.abs(matrix[3] - [0.0, 0.0, 0.0, 1.0]).max() > BOTTOM_ROW_TOLERANCE:
        raise BadSymmetryMatrix("Object {}: symmetry bottom row is {}, expected [0, 0, 0, 1]"
                                .format(obj_id, matrix[3].tolist()))
    try:
        return RigidPose.from_matrix(matrix)
    except BadRotation as err:
        raise BadSymmetryMatrix("Object {}: {}".format(obj_id, err))


def _continuous(obj_id, entry) -> ContinuousSymmetry:
    if not isinstance(entry, dict) or "axis" not in entry:
        raise InvalidSpec("Object {}: a continuous symmetry needs an axis".format(obj_id))
    return ContinuousSymmetry(entry["axis"], entry.get("offset", (0.0, 0.0, 0.0)))


def models_info_from_dict(raw: Mapping) -> ModelsInfo:
    """Build `ModelsInfo` from the decoded JSON object."""
    if not isinstance(raw, dict):
        raise ValidationError("models_info must be a JSON object keyed by obj_id")
    objects = {}
    for key, entry in raw.items():
        try:
            obj_id = int(key)
        except ValueError:
            raise ValidationError("models_info key {!r} is not an object id".format(key))
        if not isinstance(entry, dict) or entry.get("diameter") is None:
            raise MissingDiameter("Object {} has no diameter".format(obj_id))
        unknown = sorted(set(entry) - _KNOWN_KEYS)
        if unknown:
            logger.warning("Ignoring unknown keys {} of object {} in models_info".format(
                unknown, obj_id))
        discrete = [_discrete(obj_id, values) for values in entry.get("symmetries_discrete", [])]
        continuous = [_continuous(obj_id, item) for item in entry.get("symmetries_continuous", [])]
        objects[obj_id] = ObjectInfo(entry["diameter"], SymmetrySpec(discrete, continuous))
    return ModelsInfo(objects)


def parse_models_info(data: bytes) -> ModelsInfo:
    """
    Parse ``models_info.json``.

    Raises
    ------
    MissingDiameter
        If an object has no diameter.
    BadSymmetryMatrix
        If a discrete symmetry is not a rigid 4x4 transform.
    NonUnitAxis
        If a continuous symmetry axis is not a unit vector.

    """
    try:
        raw = json.loads(data)
    except ValueError as err:
        raise ValidationError("models_info is not valid JSON: {}".format(err))
    return models_info_from_dict(raw)


def models_info_to_dict(info: ModelsInfo) -> dict:
    """The JSON object of `info`, keyed by object id in ascending order."""
    result = {}
    for obj_id in info:
        item = info[obj_id]
        entry = {"diameter": item.diameter}
        if item.symmetries.discrete:
            entry["symmetries_discrete"] = [
                [float(v) for v in t.as_matrix().reshape(-1)] for t in item.symmetries.discrete]
        if item.symmetries.continuous:
            entry["symmetries_continuous"] = [
                {"axis": s.axis.tolist(), "offset": s.offset.tolist()}
                for s in item.symmetries.continuous]
        result[str(obj_id)] = entry
    return result


def write_models_info(info: ModelsInfo) -> bytes:
    """Serialize `info` as ``models_info.json``."""
    return (json.dumps(models_info_to_dict(info), indent=2) + "\n").encode("utf-8")
