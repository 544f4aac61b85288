"""Tests of models_info parsing."""
import json

import numpy as np
import pytest

from poseval.exceptions import BadSymmetryMatrix, MissingDiameter, NonUnitAxis, UnknownObject
from poseval.geom import ContinuousSymmetry, RigidPose, SymmetrySpec
from poseval.io import ModelsInfo, ObjectInfo, parse_models_info, write_models_info

Z_180 = [-1.0, 0.0, 0.0, 0.0,
         0.0, -1.0, 0.0, 0.0,
         0.0, 0.0, 1.0, 0.0,
         0.0, 0.0, 0.0, 1.0]


def _parse(raw):
    return parse_models_info(json.dumps(raw).encode())


def test_examples():
    """Objects without symmetries, with a discrete one and with a continuous one."""
    info = _parse({"1": {"diameter": 100.0}})
    assert list(info) == [1]
    assert info[1].diameter == 100.0
    assert info[1].symmetries.is_empty

    info = _parse({"2": {"diameter": 50, "symmetries_discrete": [Z_180]}})
    assert len(info[2].symmetries.discrete) == 1
    assert info[2].symmetries.discrete[0].rotation.tolist() == np.diag([-1, -1, 1]).tolist()

    info = _parse({"3": {"diameter": 50, "symmetries_continuous": [
        {"axis": [0, 0, 1], "offset": [0, 0, 5]}]}})
    assert info[3].symmetries.continuous[0].offset.tolist() == [0, 0, 5]
    with pytest.raises(UnknownObject):
        info[4]


def test_errors():
    """Missing diameters, bad matrices and non-unit axes are rejected."""
    with pytest.raises(MissingDiameter):
        _parse({"1": {"symmetries_discrete": [Z_180]}})
    with pytest.raises(NonUnitAxis):
        _parse({"1": {"diameter": 10, "symmetries_continuous": [{"axis": [0, 0, 2]}]}})
    with pytest.raises(BadSymmetryMatrix):
        _parse({"1": {"diameter": 10, "symmetries_discrete": [Z_180[:15] + [2.0]]}})
    with pytest.raises(BadSymmetryMatrix):
        _parse({"1": {"diameter": 10, "symmetries_discrete": [Z_180[:12]]}})
    scaled = list(Z_180)
    scaled[0] = -2.0
    with pytest.raises(BadSymmetryMatrix):
        _parse({"1": {"diameter": 10, "symmetries_discrete": [scaled]}})


def test_bottom_row_tolerance():
    """Bottom rows within 1e-9 of [0, 0, 0, 1] are accepted."""
    nearly = Z_180[:12] + [1e-10, 0.0, 0.0, 1.0]
    assert len(_parse({"1": {"diameter": 10, "symmetries_discrete": [nearly]}})[1]
               .symmetries.discrete) == 1


def test_write_parse_write():
    """Written files parse back and write identically."""
    spec = SymmetrySpec([RigidPose(np.diag([-1.0, -1.0, 1.0]), (0.0, 0.0, 2.5))],
                        [ContinuousSymmetry((0.0, 1.0, 0.0), (1.0, 0.0, 0.0))])
    info = ModelsInfo({3: ObjectInfo(101.5, spec), 1: ObjectInfo(60.0)})
    data = write_models_info(info)
    parsed = parse_models_info(data)
    assert list(parsed) == [1, 3]
    assert parsed[3].symmetries.discrete[0] == spec.discrete[0]
    assert write_models_info(parsed) == data
