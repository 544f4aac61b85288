"""Correctness thresholds of the pose-error functions."""
import math
from typing import List, Optional, Sequence, Tuple

from poseval.entity.dict_serializable import DictSerializable
from poseval.enumeration import PoseErrorKind
from poseval.exceptions import ConfigError
from poseval.geom.camera import REFERENCE_WIDTH


def _increasing(name: str, values: Sequence[float]) -> List[float]:
    values = [float(v) for v in values]
    if not values:
        raise ConfigError("{} must not be empty".format(name))
    if not all(math.isfinite(v) and v > 0 for v in values):
        raise ConfigError("{} must be positive and finite: {}".format(name, values))
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError("{} must be strictly increasing: {}".format(name, values))
    return values


class ThresholdGrid(DictSerializable):
    """
    The thresholds (and for VSD the misalignment tolerances) a score is averaged over.

    Values are stored normalized and turned into absolute values per object and image
    by `resolve`:

    * MSSD thresholds are fractions of the object diameter.
    * MSPD thresholds are pixels at a 640 px wide image, scaled by ``width / 640``.
    * VSD thresholds are unitless; VSD tolerances are fractions of the object diameter.
    * IoU thresholds are unitless.

    Parameters
    ----------
    kind: PoseErrorKind
        The function the grid applies to.
    thresholds: List[float]
        Strictly increasing, positive.
    taus: List[float], optional
        Strictly increasing, positive; required for VSD and empty otherwise.

    """

    typ = "threshold_grid"

    def __init__(self, kind, thresholds, taus=None):
        self._kind = None
        self.kind = kind
        self._thresholds = None
        self.thresholds = thresholds
        self._taus = None
        self.taus = taus

    @property
    def kind(self) -> PoseErrorKind:
        """The pose-error function."""
        return self._kind

    @kind.setter
    def kind(self, kind):
        try:
            self._kind = PoseErrorKind.get_enum(kind)
        except ValueError as err:
            raise ConfigError(str(err))
        if self._kind is None:
            raise ConfigError("A threshold grid needs a kind")

    @property
    def thresholds(self) -> List[float]:
        """Normalized correctness thresholds."""
        return self._thresholds

    @thresholds.setter
    def thresholds(self, thresholds):
        self._thresholds = _increasing("{} thresholds".format(self._kind.value), thresholds)
        if self._kind is PoseErrorKind.IOU2D and self._thresholds[-1] > 1:
            raise ConfigError("IoU thresholds cannot exceed 1: {}".format(self._thresholds))

    @property
    def taus(self) -> List[float]:
        """Normalized VSD misalignment tolerances; empty for other kinds."""
        return self._taus

    @taus.setter
    def taus(self, taus):
        if self._kind is PoseErrorKind.VSD:
            self._taus = _increasing("vsd taus", taus or [])
        elif taus:
            raise ConfigError("Only VSD grids have taus, got {} for {}".format(
                taus, self._kind.value))
        else:
            self._taus = []

    @property
    def size(self) -> int:
        """Number of (threshold, tau) settings the score is averaged over."""
        return len(self._thresholds) * max(1, len(self._taus))

    def resolve(self, *, diameter: Optional[float] = None,
                image_width: Optional[int] = None) -> Tuple[List[float], List[float]]:
        """
        Return the absolute thresholds and tolerances for one object in one image.

        Parameters
        ----------
        diameter: float, optional
            Object diameter in millimeters; required for MSSD and VSD.
        image_width: int, optional
            Image width in pixels; required for MSPD.

        Returns
        -------
        Tuple[List[float], List[float]]
            Thresholds (mm for MSSD, px for MSPD, unitless otherwise) and VSD tolerances
            in millimeters (empty for other kinds).

        """
        if self._kind is PoseErrorKind.MSSD:
            _require("diameter", diameter)
            return [t * diameter for t in self._thresholds], []
        if self._kind is PoseErrorKind.MSPD:
            _require("image_width", image_width)
            scale = image_width / REFERENCE_WIDTH
            return [t * scale for t in self._thresholds], []
        if self._kind is PoseErrorKind.VSD:
            _require("diameter", diameter)
            return list(self._thresholds), [tau * diameter for tau in self._taus]
        return list(self._thresholds), []


def _require(name, value):
    if value is None or not value > 0:
        raise ConfigError("Resolving this grid needs a positive {}, got {}".format(name, value))


def default_grid(kind) -> ThresholdGrid:
    """
    The standard grid of a pose-error function.

    MSSD: 0.05d to 0.50d in steps of 0.05d.  MSPD: 5r to 50r px in steps of 5r,
    ``r = width / 640``.  VSD: thresholds 0.05 to 0.50 and tolerances 0.05d to 0.50d,
    both in steps of 0.05.  IoU: 0.50 to 0.95 in steps of 0.05.
    """
    kind = PoseErrorKind.get_enum(kind)
    twentieths = [k / 20 for k in range(1, 11)]
    if kind is PoseErrorKind.MSSD:
        return ThresholdGrid(kind, twentieths)
    if kind is PoseErrorKind.MSPD:
        return ThresholdGrid(kind, [5.0 * k for k in range(1, 11)])
    if kind is PoseErrorKind.VSD:
        return ThresholdGrid(kind, twentieths, twentieths)
    return ThresholdGrid(kind, [k / 20 for k in range(10, 20)])
