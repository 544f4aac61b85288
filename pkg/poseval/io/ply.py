"""
Reading and writing PLY meshes.

ASCII and binary little-endian files are read.  Only the vertex coordinates and the
face vertex lists are kept; every other element and property is skipped.
"""
from logging import getLogger
from typing import List, Optional, Tuple

import numpy as np

from poseval.exceptions import MalformedHeader, UnsupportedEncoding, ValidationError
from poseval.geom import TriMesh

logger = getLogger(__name__)

_TYPES = {
    "char": "i1", "int8": "i1", "uchar": "u1", "uint8": "u1",
    "short": "i2", "int16": "i2", "ushort": "u2", "uint16": "u2",
    "int": "i4", "int32": "i4", "uint": "u4", "uint32": "u4",
    "float": "f4", "float32": "f4", "double": "f8", "float64": "f8",
}
_FACE_LISTS = ("vertex_indices", "vertex_index")


class _Property(object):
    __slots__ = ("name", "dtype", "count_dtype")

    def __init__(self, name: str, dtype: str, count_dtype: Optional[str] = None):
        self.name = name
        self.dtype = dtype
        self.count_dtype = count_dtype

    @property
    def is_list(self) -> bool:
        return self.count_dtype is not None


class _Element(object):
    __slots__ = ("name", "count", "properties")

    def __init__(self, name: str, count: int):
        self.name = name
        self.count = count
        self.properties: List[_Property] = []


def _parse_header(data: bytes) -> Tuple[str, List[_Element], int]:
    """Return the format, the declared elements and the offset of the body."""
    end = data.find(b"end_header")
    if not data.startswith(b"ply") or end < 0:
        raise MalformedHeader("Not a PLY file", line=1)
    body_start = data.find(b"\n", end)
    if body_start < 0:
        raise MalformedHeader("Header is not terminated by a newline")
    try:
        lines = data[:end].decode("ascii").splitlines()
    except UnicodeDecodeError:
        raise MalformedHeader("Header is not ASCII")

    fmt, elements = None, []
    for number, line in enumerate(lines[1:], 2):
        words = line.split()
        if not words or words[0] in ("comment", "obj_info"):
            continue
        if words[0] == "format":
            if len(words) != 3:
                raise MalformedHeader("Bad format line: {}".format(line), line=number)
            fmt = words[1]
        elif words[0] == "element":
            if len(words) != 3 or not words[2].isdigit():
                raise MalformedHeader("Bad element line: {}".format(line), line=number)
            elements.append(_Element(words[1], int(words[2])))
        elif words[0] == "property":
            if not elements:
                raise MalformedHeader("Property before any element", line=number)
            try:
                if words[1] == "list" and len(words) == 5:
                    prop = _Property(words[4], _TYPES[words[3]], _TYPES[words[2]])
                elif len(words) == 3:
                    prop = _Property(words[2], _TYPES[words[1]])
                else:
                    raise MalformedHeader("Bad property line: {}".format(line), line=number)
            except KeyError as err:
                raise MalformedHeader("Unknown property type {}".format(err), line=number)
            elements[-1].properties.append(prop)
        else:
            raise MalformedHeader("Unexpected header line: {}".format(line), line=number)

    if fmt is None:
        raise MalformedHeader("Missing format line")
    if fmt == "binary_big_endian":
        raise UnsupportedEncoding("Big-endian PLY files are not supported")
    if fmt not in ("ascii", "binary_little_endian"):
        raise MalformedHeader("Unknown PLY format {}".format(fmt))
    return fmt, elements, body_start + 1


class _AsciiBody(object):

    def __init__(self, data: bytes):
        try:
            self.tokens = data.decode("ascii").split()
        except UnicodeDecodeError:
            raise MalformedHeader("ASCII body holds non-ASCII bytes")
        self.cursor = 0

    def table(self, element: _Element) -> np.ndarray:
        """All rows of an element without list properties, as floats."""
        width = len(element.properties)
        size = element.count * width
        if self.cursor + size > len(self.tokens):
            raise MalformedHeader("File ends inside element {}".format(element.name))
        chunk = self.tokens[self.cursor:self.cursor + size]
        self.cursor += size
        return np.array(chunk, dtype=np.float64).reshape(element.count, width)

    def value(self) -> float:
        if self.cursor >= len(self.tokens):
            raise MalformedHeader("File ends before all declared elements were read")
        self.cursor += 1
        return float(self.tokens[self.cursor - 1])


class _BinaryBody(object):

    def __init__(self, data: bytes):
        self.data = data
        self.cursor = 0

    def table(self, element: _Element) -> np.ndarray:
        dtype = np.dtype([(str(i), "<" + p.dtype) for i, p in enumerate(element.properties)])
        size = dtype.itemsize * element.count
        if self.cursor + size > len(self.data):
            raise MalformedHeader("File ends inside element {}".format(element.name))
        rows = np.frombuffer(self.data, dtype=dtype, count=element.count, offset=self.cursor)
        self.cursor += size
        if not element.properties:
            return np.empty((element.count, 0))
        return np.stack([rows[name].astype(np.float64) for name in dtype.names], axis=1)

    def fixed_faces(self, element: _Element) -> Optional[np.ndarray]:
        """Fast path: a face element whose only property is a list of three indices."""
        prop = element.properties[0]
        dtype = np.dtype([("n", "<" + prop.count_dtype), ("v", "<" + prop.dtype, (3,))])
        size = dtype.itemsize * element.count
        if self.cursor + size > len(self.data):
            return None
        rows = np.frombuffer(self.data, dtype=dtype, count=element.count, offset=self.cursor)
        if not np.all(rows["n"] == 3):
            return None
        self.cursor += size
        return rows["v"].astype(np.int64)

    def value(self, dtype: str) -> float:
        dtype = np.dtype("<" + dtype)
        if self.cursor + dtype.itemsize > len(self.data):
            raise MalformedHeader("File ends before all declared elements were read")
        value = np.frombuffer(self.data, dtype=dtype, count=1, offset=self.cursor)[0]
        self.cursor += dtype.itemsize
        return value


def _read_rows(body, binary: bool, element: _Element):
    """Read an element with list properties row by row; yields the face list per row."""
    for _ in range(element.count):
        face = None
        for prop in element.properties:
            if prop.is_list:
                count = body.value(prop.count_dtype) if binary else body.value()
                values = [int(body.value(prop.dtype) if binary else body.value())
                          for _ in range(int(count))]
                if prop.name in _FACE_LISTS:
                    face = values
            else:
                if binary:
                    body.value(prop.dtype)
                else:
                    body.value()
        yield face


def _fan(faces) -> np.ndarray:
    triangles = []
    for face in faces:
        if face is None or len(face) < 3:
            continue
        triangles.extend((face[0], face[i], face[i + 1]) for i in range(1, len(face) - 1))
    return np.array(triangles, dtype=np.int64).reshape(-1, 3)


def parse_ply(data: bytes) -> TriMesh:
    """
    Parse a PLY file into a mesh.

    Vertices keep their file order; polygons are triangulated as fans around their first
    vertex.

    Raises
    ------
    MalformedHeader
        If the header cannot be understood, lacks vertex coordinates, or the body is
        shorter than declared.
    UnsupportedEncoding
        For big-endian files.
    IndexOutOfRange
        If a face refers to a missing vertex.

    """
    fmt, elements, offset = _parse_header(data)
    binary = fmt == "binary_little_endian"
    body = _BinaryBody(data[offset:]) if binary else _AsciiBody(data[offset:])

    vertices, triangles = None, np.empty((0, 3), dtype=np.int64)
    try:
        for element in elements:
            has_lists = any(p.is_list for p in element.properties)
            if element.name == "vertex":
                if has_lists:
                    raise MalformedHeader("Vertex elements cannot hold lists")
                names = [p.name for p in element.properties]
                if not all(axis in names for axis in "xyz"):
                    raise MalformedHeader("Vertices need x, y and z properties")
                table = body.table(element)
                vertices = table[:, [names.index(axis) for axis in "xyz"]]
            elif not has_lists:
                body.table(element)
            elif element.name == "face" and binary and len(element.properties) == 1 \
                    and element.properties[0].name in _FACE_LISTS:
                fixed = body.fixed_faces(element)
                if fixed is None:
                    fixed = _fan(_read_rows(body, binary, element))
                triangles = fixed
            else:
                faces = _fan(_read_rows(body, binary, element))
                if element.name == "face":
                    triangles = faces
    except ValueError as err:
        if isinstance(err, ValidationError):
            raise
        raise MalformedHeader("Body does not match the header: {}".format(err))
    if vertices is None:
        raise MalformedHeader("No vertex element")
    return TriMesh(vertices, triangles)


def write_ply(mesh: TriMesh, binary: bool = False) -> bytes:
    """
    Serialize a mesh as PLY with double precision coordinates.

    Parameters
    ----------
    mesh: TriMesh
        The mesh.
    binary: bool
        Write binary little-endian instead of ASCII.

    """
    vertices, triangles = mesh.vertices, mesh.triangles
    header = "\n".join([
        "ply",
        "format {} 1.0".format("binary_little_endian" if binary else "ascii"),
        "element vertex {}".format(len(vertices)),
        "property double x",
        "property double y",
        "property double z",
        "element face {}".format(len(triangles)),
        "property list uchar int vertex_indices",
        "end_header",
    ]) + "\n"
    if binary:
        faces = np.zeros(len(triangles), dtype=[("n", "u1"), ("v", "<i4", (3,))])
        faces["n"] = 3
        faces["v"] = triangles
        return header.encode("ascii") + vertices.astype("<f8").tobytes() + faces.tobytes()
    lines = [" ".join(repr(float(c)) for c in vertex) for vertex in vertices]
    lines.extend("3 {} {} {}".format(*face) for face in triangles)
    return (header + "".join(line + "\n" for line in lines)).encode("ascii")
