"""Tests of symmetry annotations and their discretization."""
import math

import numpy as np
import pytest

from poseval.exceptions import InvalidSpec, NonUnitAxis
from poseval.geom import ContinuousSymmetry, RigidPose, SymmetrySet, SymmetrySpec, \
    discretize_symmetries
from poseval.geom.symmetry import steps_per_axis

Z_180 = RigidPose([[-1, 0, 0], [0, -1, 0], [0, 0, 1]], (0, 0, 0))
Z_90 = RigidPose([[0, -1, 0], [1, 0, 0], [0, 0, 1]], (0, 0, 0))


def _assert_no_duplicates(syms: SymmetrySet):
    keys = np.concatenate([syms.rotations.reshape(len(syms), -1), syms.translations], axis=1)
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            assert np.abs(keys[i] - keys[j]).max() > 1e-9


def test_examples():
    """No symmetries, one discrete half turn and one continuous axis."""
    assert len(discretize_symmetries(SymmetrySpec(), 100.0)) == 1
    syms = discretize_symmetries(SymmetrySpec(discrete=[Z_180]), 100.0)
    assert len(syms) == 2
    assert syms.transforms[0] == RigidPose.identity()
    assert syms.transforms[1] == Z_180

    expected = min(64, math.ceil(2 * math.pi / (2 * math.asin(0.01))))
    assert steps_per_axis(100.0, 0.01) == expected == 64
    syms = discretize_symmetries(SymmetrySpec(continuous=[ContinuousSymmetry((0, 0, 1))]),
                                 100.0, 0.01)
    assert len(syms) == expected
    _assert_no_duplicates(syms)


def test_continuous_ordering_and_bound():
    """Continuous samples come in increasing angle and respect the displacement bound."""
    spec = SymmetrySpec(continuous=[ContinuousSymmetry((0, 0, 1), (5, 0, 0))])
    syms = discretize_symmetries(spec, 100.0, 0.2)
    count = steps_per_axis(100.0, 0.2)
    assert count < 64
    assert 2 * 50 * math.sin(math.pi / count) <= 0.2 * 100
    angles = [math.atan2(t.rotation[1, 0], t.rotation[0, 0]) % (2 * math.pi)
              for t in syms.transforms[1:]]
    assert angles == sorted(angles)
    # the axis passes through the offset, which is therefore fixed
    for transform in syms:
        assert np.allclose(transform.rotation @ [5, 0, 0] + transform.translation, [5, 0, 0])


def test_discrete_and_continuous_combine():
    """Discrete transforms compose with continuous samples and duplicates are removed."""
    flip_x = RigidPose([[1, 0, 0], [0, -1, 0], [0, 0, -1]], (0, 0, 0))
    spec = SymmetrySpec(discrete=[flip_x, Z_180],
                        continuous=[ContinuousSymmetry((0, 0, 1))])
    syms = discretize_symmetries(spec, 100.0, 0.01)
    # Z_180 is already one of the 64 continuous samples
    assert len(syms) == 2 * 64
    _assert_no_duplicates(syms)
    prism = SymmetrySpec(discrete=[Z_90, Z_180, Z_90.compose(Z_180)])
    assert len(discretize_symmetries(prism, 10.0)) == 4


def test_validation():
    """Bad axes, diameters and step fractions are rejected."""
    with pytest.raises(NonUnitAxis):
        ContinuousSymmetry((0, 0, 2))
    with pytest.raises(InvalidSpec):
        ContinuousSymmetry((0, 0, 2))
    with pytest.raises(InvalidSpec):
        discretize_symmetries(SymmetrySpec(), 0.0)
    with pytest.raises(InvalidSpec):
        discretize_symmetries(SymmetrySpec(), 10.0, 1.5)
    with pytest.raises(TypeError):
        SymmetrySpec(discrete=[np.eye(4)])
    with pytest.raises(ValueError):
        SymmetrySet([Z_180])
    assert SymmetrySpec().is_empty
    assert len(SymmetrySet.identity_only()) == 1
