"""Tunable parameters of an evaluation run."""
import os
from typing import Mapping, Optional

from poseval.enumeration import PoseErrorKind
from poseval.exceptions import ConfigError
from poseval.geom.symmetry import DEFAULT_MAX_STEP_FRACTION
from poseval.metrics.threshold_grid import ThresholdGrid, default_grid
from poseval.render.visibility import DEFAULT_DELTA

JOBS_VARIABLE = "POSE_EVAL_JOBS"


def default_jobs() -> int:
    """Worker count from the ``POSE_EVAL_JOBS`` environment variable, else 1."""
    value = os.environ.get(JOBS_VARIABLE)
    if value is None or value.strip() == "":
        return 1
    try:
        jobs = int(value)
    except ValueError:
        raise ConfigError("{} must be a positive integer, got {!r}".format(JOBS_VARIABLE, value))
    if jobs < 1:
        raise ConfigError("{} must be a positive integer, got {!r}".format(JOBS_VARIABLE, value))
    return jobs


class EvalSettings(object):
    """
    Threshold grids, tolerances and parallelism of an evaluation.

    Parameters
    ----------
    grids: Mapping[PoseErrorKind, ThresholdGrid], optional
        Overrides of the default grids.
    vsd_delta: float
        VSD occlusion tolerance in millimeters.
    max_sym_step: float
        Sampling step of continuous symmetries, as a fraction of the object diameter.
    jobs: int
        Number of worker threads.

    """

    __slots__ = ("grids", "vsd_delta", "max_sym_step", "jobs")

    def __init__(self, grids: Optional[Mapping] = None, vsd_delta: float = DEFAULT_DELTA,
                 max_sym_step: float = DEFAULT_MAX_STEP_FRACTION, jobs: int = 1):
        self.grids = {kind: default_grid(kind) for kind in PoseErrorKind}
        for kind, grid in (grids or {}).items():
            kind = PoseErrorKind.get_enum(kind)
            if not isinstance(grid, ThresholdGrid) or grid.kind is not kind:
                raise ConfigError("The {} grid override is not a {} ThresholdGrid".format(
                    kind.value, kind.value))
            self.grids[kind] = grid
        if not vsd_delta >= 0:
            raise ConfigError("vsd_delta must be non-negative, got {}".format(vsd_delta))
        if not 0 < max_sym_step <= 1:
            raise ConfigError("max_sym_step must be in (0, 1], got {}".format(max_sym_step))
        if isinstance(jobs, bool) or int(jobs) != jobs or jobs < 1:
            raise ConfigError("jobs must be a positive integer, got {!r}".format(jobs))
        self.vsd_delta = float(vsd_delta)
        self.max_sym_step = float(max_sym_step)
        self.jobs = int(jobs)

    def grid(self, kind) -> ThresholdGrid:
        """The grid of one pose-error function."""
        return self.grids[PoseErrorKind.get_enum(kind)]
