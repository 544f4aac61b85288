"""Tests of meshes and their diameters."""
import itertools

import numpy as np
import pytest

from poseval.exceptions import IndexOutOfRange, ValidationError
from poseval.geom import TriMesh, mesh_diameter


def test_diameter_examples():
    """Unit cube, single vertex and a two-point segment."""
    cube = TriMesh(list(itertools.product([0, 1], repeat=3)))
    assert mesh_diameter(cube) == pytest.approx(np.sqrt(3), rel=1e-12)
    assert mesh_diameter(TriMesh([(1, 2, 3)])) == 0
    assert mesh_diameter(TriMesh([(0, 0, 0), (0, 0, 5)])) == 5


def test_diameter_matches_brute_force():
    """The hull shortcut agrees with comparing every pair."""
    rng = np.random.default_rng(11)
    points = rng.normal(size=(200, 3)) * [30, 10, 5]
    brute = max(np.linalg.norm(a - b) for a, b in itertools.combinations(points, 2))
    assert mesh_diameter(TriMesh(points)) == pytest.approx(brute, rel=1e-12)
    flat = np.c_[rng.uniform(size=(10, 2)), np.zeros(10)]  # coplanar: no hull
    brute = max(np.linalg.norm(a - b) for a, b in itertools.combinations(flat, 2))
    assert mesh_diameter(TriMesh(flat)) == pytest.approx(brute, rel=1e-12)


def test_validation():
    """Meshes reject bad indices, NaNs and emptiness."""
    with pytest.raises(IndexOutOfRange):
        TriMesh([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 7)])
    with pytest.raises(ValidationError):
        TriMesh([(0, 0, np.nan)])
    with pytest.raises(ValidationError):
        TriMesh(np.empty((0, 3)))
    mesh = TriMesh([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 2)])
    assert mesh == TriMesh([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 2)])
    assert mesh.scaled(2.0).vertices[1, 0] == 2.0
    assert "3 vertices" in repr(mesh)
