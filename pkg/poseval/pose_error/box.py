"""Axis-aligned 2D bounding boxes."""
import math
from typing import List

from poseval.exceptions import ValidationError


class Box2D(object):
    """
    An axis-aligned box in pixels.

    Parameters
    ----------
    x, y: float
        Top-left corner.
    w, h: float
        Width and height, both >= 0.

    """

    __slots__ = ("x", "y", "w", "h")

    def __init__(self, x: float, y: float, w: float, h: float):
        values = [float(v) for v in (x, y, w, h)]
        if not all(math.isfinite(v) for v in values):
            raise ValidationError("Box coordinates must be finite: {}".format(values))
        if values[2] < 0 or values[3] < 0:
            raise ValidationError("Box extent must be non-negative: w={}, h={}".format(
                values[2], values[3]))
        for name, value in zip(self.__slots__, values):
            object.__setattr__(self, name, value)

    def __setattr__(self, key, value):
        raise AttributeError("Box2D is immutable")

    @classmethod
    def from_list(cls, values) -> "Box2D":
        """Build a box from ``[x, y, w, h]``."""
        values = list(values)
        if len(values) != 4:
            raise ValidationError("A box needs 4 values, got {}".format(len(values)))
        return cls(*values)

    @property
    def area(self) -> float:
        """Area in square pixels."""
        return self.w * self.h

    def as_list(self) -> List[float]:
        """``[x, y, w, h]``."""
        return [self.x, self.y, self.w, self.h]

    def __eq__(self, other):
        if not isinstance(other, Box2D):
            return False
        return self.as_list() == other.as_list()

    def __hash__(self):
        return hash(tuple(self.as_list()))

    def __repr__(self):
        return "Box2D(x={}, y={}, w={}, h={})".format(self.x, self.y, self.w, self.h)
