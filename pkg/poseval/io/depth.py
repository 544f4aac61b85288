"""16-bit single-channel PNG depth images."""
import io
import zlib

import numpy as np
import png

from poseval.exceptions import DecodeError, UnsupportedBitDepth, ValidationError
from poseval.render.depth_map import DepthMap

MAX_RAW_DEPTH = 65535


def decode_depth(data: bytes) -> np.ndarray:
    """
    Decode a depth PNG into its raw height x width ``uint16`` values.

    Raises
    ------
    UnsupportedBitDepth
        Unless the image is 16-bit with a single channel.
    DecodeError
        If the bytes are not a readable PNG.

    """
    try:
        width, height, rows, info = png.Reader(bytes=data).read()
        if info["bitdepth"] != 16 or info["planes"] != 1:
            raise UnsupportedBitDepth(
                "Depth images must be 16-bit single channel, got {}-bit with {} channel(s)"
                .format(info["bitdepth"], info["planes"]))
        raw = np.vstack([np.asarray(row, dtype=np.uint16) for row in rows])
    except (png.Error, zlib.error) as err:
        raise DecodeError("Cannot decode depth PNG: {}".format(err))
    if raw.shape != (height, width):
        raise DecodeError("Decoded {} pixels for a {}x{} image".format(raw.size, width, height))
    return raw


def load_depth(data: bytes, depth_scale: float) -> DepthMap:
    """
    Load a depth image in millimeters: ``raw * depth_scale``, raw 0 staying 0 (no data).

    Parameters
    ----------
    data: bytes
        The PNG file.
    depth_scale: float
        Millimeters per raw unit, > 0.

    """
    if not depth_scale > 0:
        raise ValidationError("depth_scale must be positive, got {}".format(depth_scale))
    return DepthMap(decode_depth(data).astype(np.float64) * depth_scale)


def quantize_depth(depth: DepthMap, depth_scale: float) -> np.ndarray:
    """Raw ``uint16`` values that `load_depth` turns back into `depth`, up to rounding."""
    if not depth_scale > 0:
        raise ValidationError("depth_scale must be positive, got {}".format(depth_scale))
    raw = np.rint(depth.values / depth_scale)
    if raw.max() > MAX_RAW_DEPTH:
        raise ValidationError("Depth {} mm does not fit 16 bits at scale {}".format(
            depth.values.max(), depth_scale))
    return raw.astype(np.uint16)


def write_depth(raw) -> bytes:
    """Encode raw ``uint16`` values (height x width) as a 16-bit grayscale PNG."""
    raw = np.asarray(raw)
    if raw.ndim != 2 or raw.dtype != np.uint16:
        raise ValidationError("Raw depth must be a 2D uint16 array, got {} {}".format(
            raw.ndim, raw.dtype))
    height, width = raw.shape
    buffer = io.BytesIO()
    writer = png.Writer(width, height, greyscale=True, bitdepth=16)
    writer.write(buffer, raw.tolist())
    return buffer.getvalue()
