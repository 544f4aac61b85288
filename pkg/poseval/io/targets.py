"""The evaluated images and the objects to localize in them (``test_targets.json``)."""
import json

from poseval.exceptions import ValidationError
from poseval.metrics.instances import TargetList

_FIELDS = ("scene_id", "im_id", "obj_id", "inst_count")


def parse_targets(data: bytes) -> TargetList:
    """
    Parse a JSON array of ``{scene_id, im_id, obj_id, inst_count}`` records.

    Raises
    ------
    DuplicateTarget
        If a (scene_id, im_id, obj_id) triple appears twice.
    NonPositiveCount
        If an instance count is below one.

    """
    try:
        rows = json.loads(data)
    except ValueError as err:
        raise ValidationError("Targets are not valid JSON: {}".format(err))
    if not isinstance(rows, list):
        raise ValidationError("Targets must be a JSON array")
    targets = TargetList()
    for index, row in enumerate(rows):
        if not isinstance(row, dict) or any(field not in row for field in _FIELDS):
            raise ValidationError("Target {} must give {}".format(index, ", ".join(_FIELDS)))
        targets.add(*(row[field] for field in _FIELDS))
    return targets


def write_targets(targets: TargetList) -> bytes:
    """Serialize `targets`, images in ascending order."""
    rows = [dict(zip(_FIELDS, record)) for record in targets]
    return (json.dumps(rows, indent=2) + "\n").encode("utf-8")
