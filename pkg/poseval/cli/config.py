"""Configuration of an evaluation run."""
import json
from logging import getLogger
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from poseval.entity.dict_serializable import DictSerializable
from poseval.enumeration import PoseErrorKind, Task
from poseval.evaluation.settings import EvalSettings, default_jobs
from poseval.exceptions import ConfigError
from poseval.io.dataset import read_file
from poseval.io.report import FORMATS
from poseval.metrics.threshold_grid import ThresholdGrid
from poseval.units import IncompatibleUnitsError, UndefinedUnitError, parse_length

logger = getLogger(__name__)

TARGETS_FILE = "test_targets.json"
GRID_SETTINGS = ("vsd_delta", "max_sym_step")


def _parse_grid_file(data: bytes) -> Dict:
    try:
        entries = json.loads(data.decode("utf-8"))
    except ValueError as err:
        raise ConfigError("Grid file is not valid JSON: {}".format(err))
    if not isinstance(entries, dict):
        raise ConfigError("A grid file holds a JSON object")

    grids = {}
    settings = {}
    for key, value in sorted(entries.items()):
        if key in GRID_SETTINGS:
            settings[key] = value
            continue
        try:
            kind = PoseErrorKind.get_enum(key)
        except ValueError:
            logger.warning("Ignoring unknown grid file entry {!r}".format(key))
            continue
        if not isinstance(value, dict) or "thresholds" not in value:
            raise ConfigError("Grid entry {!r} must be an object with thresholds".format(key))
        grids[kind] = ThresholdGrid(kind, value["thresholds"], value.get("taus"))

    result = {"grids": grids}
    if "vsd_delta" in settings:
        try:
            result["vsd_delta"] = parse_length(settings["vsd_delta"])
        except (TypeError, IncompatibleUnitsError, UndefinedUnitError) as err:
            raise ConfigError("vsd_delta is not a length: {}".format(err))
    if "max_sym_step" in settings:
        step = settings["max_sym_step"]
        if isinstance(step, bool) or not isinstance(step, (int, float)):
            raise ConfigError("max_sym_step must be a number, got {!r}".format(step))
        result["max_sym_step"] = float(step)
    return result


def load_grid_file(path) -> Dict:
    """
    Read threshold-grid overrides.

    The file is a JSON object with optional ``mssd``, ``mspd``, ``vsd`` and ``iou``
    entries, each ``{"thresholds": [...]}`` (VSD also takes ``"taus"``), and optional
    ``vsd_delta`` (millimeters, or a quantity string such as ``"1.5 cm"``) and
    ``max_sym_step`` entries.

    Returns
    -------
    Dict
        Keyword arguments of EvalSettings.

    """
    return read_file(Path(path), _parse_grid_file)


class EvalConfig(DictSerializable):
    """
    Everything an ``eval`` run needs.

    The i-th dataset, target list and submission form one evaluated dataset.

    Parameters
    ----------
    task: Task
        The task; it fixes the submission column layout.
    datasets: List[str]
        Dataset directories.
    submissions: List[str]
        One submission file per dataset.
    output: str
        Directory the reports are written to.
    targets: List[str], optional
        One target file per dataset; defaults to ``<dataset>/test_targets.json``.
    formats: List[str]
        Report formats, a subset of ``json`` and ``csv``.
    jobs: int, optional
        Worker threads; defaults to ``POSE_EVAL_JOBS`` or 1.
    grid: str, optional
        A threshold-grid override file (see `load_grid_file`).

    """

    typ = "eval_config"

    def __init__(self, task, datasets, submissions, output, targets=None,
                 formats=FORMATS, jobs=None, grid=None):
        try:
            self._task = Task.get_enum(task)
        except ValueError as err:
            raise ConfigError(str(err))
        if self._task is None:
            raise ConfigError("An evaluation needs a task")
        self.datasets = [str(d) for d in datasets]
        if not self.datasets:
            raise ConfigError("An evaluation needs at least one dataset")
        self.submissions = [str(s) for s in submissions]
        if targets:
            self.targets = [str(t) for t in targets]
        else:
            self.targets = [str(Path(d) / TARGETS_FILE) for d in self.datasets]
        if not len(self.datasets) == len(self.submissions) == len(self.targets):
            raise ConfigError("Got {} dataset(s), {} submission(s) and {} target file(s)"
                              .format(len(self.datasets), len(self.submissions),
                                      len(self.targets)))
        self.output = str(output)
        self.formats = _formats(formats)
        if jobs is not None and (isinstance(jobs, bool) or int(jobs) != jobs or jobs < 1):
            raise ConfigError("jobs must be a positive integer, got {!r}".format(jobs))
        self.jobs = None if jobs is None else int(jobs)
        self.grid = None if grid is None else str(grid)

    @property
    def task(self) -> Task:
        """The evaluated task."""
        return self._task

    def runs(self) -> List[Tuple[Path, Path, Path]]:
        """(dataset, targets, submission) paths of every evaluated dataset."""
        return [(Path(d), Path(t), Path(s))
                for d, t, s in zip(self.datasets, self.targets, self.submissions)]

    def to_settings(self, jobs: Optional[int] = None) -> EvalSettings:
        """The evaluation settings, with the grid file applied."""
        overrides = load_grid_file(self.grid) if self.grid is not None else {}
        if jobs is None:
            jobs = self.jobs if self.jobs is not None else default_jobs()
        try:
            return EvalSettings(jobs=jobs, **overrides)
        except ConfigError as err:
            raise err if self.grid is None else err.located(self.grid)


def _formats(formats) -> List[str]:
    if isinstance(formats, str):
        formats = formats.split(",")
    result = []
    for fmt in formats:
        fmt = fmt.strip().lower()
        if fmt not in FORMATS:
            raise ConfigError("Unknown report format {!r}; expected {}".format(fmt, FORMATS))
        if fmt not in result:
            result.append(fmt)
    if not result:
        raise ConfigError("At least one report format is needed")
    return result
