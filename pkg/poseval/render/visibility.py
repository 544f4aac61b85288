"""Which rendered pixels of an object are visible in a scene."""
import math

from poseval.exceptions import ValidationError
from poseval.render.depth_map import DepthMap, VisibilityMask, check_same_size

# Occlusion tolerance in millimeters.
DEFAULT_DELTA = 15.0


def visibility_mask(rendered: DepthMap, scene: DepthMap,
                    delta: float = DEFAULT_DELTA) -> VisibilityMask:
    """
    Pixels where a rendered surface is not occluded by the scene.

    A pixel is visible iff ``rendered > 0`` and either the scene has no depth there or
    ``rendered <= scene + delta``.

    Parameters
    ----------
    rendered: DepthMap
        Depth of the object alone.
    scene: DepthMap
        Measured (or composited) depth of the whole scene.
    delta: float
        Occlusion tolerance in millimeters, >= 0.

    Returns
    -------
    VisibilityMask
        The visible pixels.

    Raises
    ------
    DimensionMismatch
        If the two depth maps differ in size.

    """
    check_same_size(rendered, scene)
    if not (math.isfinite(delta) and delta >= 0):
        raise ValidationError("delta must be finite and non-negative, got {}".format(delta))
    ren, sce = rendered.values, scene.values
    return VisibilityMask((ren > 0) & ((sce == 0) | (ren <= sce + delta)))
