"""Depth images and per-pixel visibility masks."""
import numpy as np

from poseval.exceptions import DimensionMismatch, ValidationError


def check_same_size(first, second):
    """Raise DimensionMismatch unless two images have the same width and height."""
    if (first.width, first.height) != (second.width, second.height):
        raise DimensionMismatch("Image sizes differ: {}x{} vs {}x{}".format(
            first.width, first.height, second.width, second.height))


class DepthMap(object):
    """
    A depth image in millimeters, 0 meaning "no surface".

    Parameters
    ----------
    values: array-like, height x width
        Non-negative finite depths.  The array is copied and frozen.

    """

    __slots__ = ("_values",)

    def __init__(self, values):
        values = np.array(values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise ValidationError("Depth values must be a non-empty 2D array, got shape {}".format(
                values.shape))
        if not np.all(np.isfinite(values)):
            raise ValidationError("Depth values must be finite")
        if np.any(values < 0):
            raise ValidationError("Depth values must be non-negative")
        values.setflags(write=False)
        self._values = values

    @classmethod
    def zeros(cls, width: int, height: int) -> "DepthMap":
        """An image without any surface."""
        return cls(np.zeros((height, width)))

    @classmethod
    def from_row_major(cls, width: int, height: int, values) -> "DepthMap":
        """Build a depth map from a flat row-major sequence of ``width * height`` values."""
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        if len(values) != width * height:
            raise ValidationError("Expected {} depth values for {}x{}, got {}".format(
                width * height, width, height, len(values)))
        return cls(values.reshape(height, width))

    @property
    def width(self) -> int:
        """Image width in pixels."""
        return self._values.shape[1]

    @property
    def height(self) -> int:
        """Image height in pixels."""
        return self._values.shape[0]

    @property
    def values(self) -> np.ndarray:
        """Read-only height x width array of depths."""
        return self._values

    def footprint(self) -> "VisibilityMask":
        """Pixels holding a surface."""
        return VisibilityMask(self._values > 0)

    def __eq__(self, other):
        if not isinstance(other, DepthMap):
            return False
        return bool(np.array_equal(self._values, other.values))

    __hash__ = None

    def __repr__(self):
        return "DepthMap({}x{}, {} pixels with depth)".format(
            self.width, self.height, int(np.count_nonzero(self._values)))


class VisibilityMask(object):
    """
    A boolean mask over an image.

    Parameters
    ----------
    bits: array-like, height x width
        True where a pixel belongs to the mask.

    """

    __slots__ = ("_bits",)

    def __init__(self, bits):
        bits = np.array(bits, dtype=bool)
        if bits.ndim != 2:
            raise ValidationError("Mask bits must be a 2D array, got shape {}".format(bits.shape))
        bits.setflags(write=False)
        self._bits = bits

    @property
    def width(self) -> int:
        """Image width in pixels."""
        return self._bits.shape[1]

    @property
    def height(self) -> int:
        """Image height in pixels."""
        return self._bits.shape[0]

    @property
    def bits(self) -> np.ndarray:
        """Read-only height x width boolean array."""
        return self._bits

    def count(self) -> int:
        """Number of pixels in the mask."""
        return int(np.count_nonzero(self._bits))

    def union(self, other: "VisibilityMask") -> "VisibilityMask":
        """Pixels in either mask."""
        check_same_size(self, other)
        return VisibilityMask(self._bits | other.bits)

    def intersection(self, other: "VisibilityMask") -> "VisibilityMask":
        """Pixels in both masks."""
        check_same_size(self, other)
        return VisibilityMask(self._bits & other.bits)

    def issubset(self, other: "VisibilityMask") -> bool:
        """Whether every pixel of this mask is also in `other`."""
        check_same_size(self, other)
        return not np.any(self._bits & ~other.bits)

    def __eq__(self, other):
        if not isinstance(other, VisibilityMask):
            return False
        return bool(np.array_equal(self._bits, other.bits))

    __hash__ = None

    def __repr__(self):
        return "VisibilityMask({}x{}, {} set)".format(self.width, self.height, self.count())
