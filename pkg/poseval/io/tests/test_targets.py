"""Tests of target list files."""
import json

import pytest

from poseval.exceptions import DuplicateTarget, NonPositiveCount, ValidationError
from poseval.io import parse_targets, write_targets


def _rows(*rows):
    return json.dumps([dict(zip(("scene_id", "im_id", "obj_id", "inst_count"), r))
                       for r in rows]).encode()


def test_grouping():
    """Rows are grouped by image."""
    targets = parse_targets(_rows((1, 4, 2, 1), (1, 4, 7, 3)))
    assert targets.images() == [(1, 4)]
    assert targets.targets(1, 4) == [(2, 1), (7, 3)]

    targets = parse_targets(_rows((2, 0, 1, 1), (1, 5, 1, 2), (2, 0, 3, 1)))
    assert targets.images() == [(1, 5), (2, 0)]
    assert len(targets) == 2


def test_errors():
    """Duplicates, empty counts and malformed records are rejected."""
    with pytest.raises(NonPositiveCount):
        parse_targets(_rows((1, 1, 1, 0)))
    with pytest.raises(DuplicateTarget):
        parse_targets(_rows((1, 1, 1, 1), (1, 1, 1, 2)))
    with pytest.raises(ValidationError):
        parse_targets(b'[{"scene_id": 1, "im_id": 1}]')
    with pytest.raises(ValidationError):
        parse_targets(b'{"scene_id": 1}')


def test_write_parse_write():
    """Written target files parse back and write identically."""
    data = write_targets(parse_targets(_rows((2, 0, 1, 1), (1, 5, 1, 2))))
    assert [r["scene_id"] for r in json.loads(data)] == [1, 2]
    assert write_targets(parse_targets(data)) == data
