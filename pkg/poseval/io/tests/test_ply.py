"""Tests of PLY reading and writing."""
import numpy as np
import pytest

from poseval.demo.shapes import box_mesh
from poseval.exceptions import IndexOutOfRange, MalformedHeader, UnsupportedEncoding
from poseval.io import parse_ply, write_ply

TRIANGLE = b"""ply
format ascii 1.0
comment made by hand
element vertex 3
property float x
property float y
property float z
element face 1
property list uchar int vertex_indices
end_header
0 0 0
1 0 0
0 1 0
3 0 1 2
"""


def test_minimal_ascii():
    """The smallest valid mesh."""
    mesh = parse_ply(TRIANGLE)
    assert mesh.vertices.tolist() == [[0, 0, 0], [1, 0, 0], [0, 1, 0]]
    assert mesh.triangles.tolist() == [[0, 1, 2]]


def test_quad_and_extra_properties():
    """Polygons become triangle fans; unknown elements and properties are skipped."""
    data = b"""ply
format ascii 1.0
element vertex 4
property double nx
property double x
property double y
property double z
property uchar red
element face 1
property list uchar int vertex_indices
property uchar flags
element edge 1
property int vertex1
property int vertex2
end_header
9 0 0 0 255
9 1 0 0 255
9 1 1 0 255
9 0 1 0 255
4 0 1 2 3 7
0 1
"""
    mesh = parse_ply(data)
    assert mesh.vertices[:, 0].tolist() == [0, 1, 1, 0]
    assert mesh.triangles.tolist() == [[0, 1, 2], [0, 2, 3]]


def test_invalid_files():
    """Bad indices, big-endian files and broken headers are rejected."""
    with pytest.raises(IndexOutOfRange):
        parse_ply(TRIANGLE.replace(b"3 0 1 2", b"3 0 1 7"))
    with pytest.raises(UnsupportedEncoding):
        parse_ply(TRIANGLE.replace(b"ascii", b"binary_big_endian"))
    with pytest.raises(MalformedHeader):
        parse_ply(b"solid cube\nendsolid\n")
    with pytest.raises(MalformedHeader):
        parse_ply(TRIANGLE.replace(b"property float z\n", b""))
    with pytest.raises(MalformedHeader):
        parse_ply(TRIANGLE.replace(b"property float x", b"property quaternion x"))
    with pytest.raises(MalformedHeader):
        parse_ply(TRIANGLE.replace(b"0 1 0\n3 0 1 2\n", b""))
    with pytest.raises(MalformedHeader) as info:
        parse_ply(TRIANGLE.replace(b"element face 1", b"element face"))
    assert info.value.line == 8


@pytest.mark.parametrize("binary", [False, True])
def test_write_parse_write(binary):
    """Written meshes parse back exactly and write identically again."""
    mesh = box_mesh((-0.1, -2.5, 1 / 3), (30.0, 2.5, 7.25))
    data = write_ply(mesh, binary=binary)
    parsed = parse_ply(data)
    assert parsed == mesh
    assert write_ply(parsed, binary=binary) == data


def test_binary_with_mixed_faces():
    """Binary faces of varying sizes take the row-by-row path."""
    header = b"""ply
format binary_little_endian 1.0
element vertex 4
property float x
property float y
property float z
element face 2
property list uchar int vertex_indices
end_header
"""
    vertices = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]], dtype="<f4").tobytes()
    faces = bytes([3]) + np.array([0, 1, 2], dtype="<i4").tobytes() \
        + bytes([4]) + np.array([0, 1, 2, 3], dtype="<i4").tobytes()
    mesh = parse_ply(header + vertices + faces)
    assert mesh.triangles.tolist() == [[0, 1, 2], [0, 1, 2], [0, 2, 3]]
