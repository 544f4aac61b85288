"""Score reports: per-dataset and overall AR/AP with the curves behind them."""
import math
from decimal import Decimal, ROUND_HALF_UP
from typing import Dict, List, Optional

from poseval.entity.dict_serializable import DictSerializable
from poseval.enumeration import PoseErrorKind, Task
from poseval.exceptions import EmptyInput, ValidationError


def round_half_up(value: float, places: int = 1) -> str:
    """Round the shortest decimal representation of `value`, halves away from zero."""
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))


def percent_1dp(fraction: float) -> str:
    """A fraction in [0, 1] as a percentage with one decimal, e.g. ``0.8214 -> '82.1'``."""
    return round_half_up(fraction * 100, 1)


def _kind_key(kind) -> str:
    return PoseErrorKind.get_value(kind)


class _Scored(DictSerializable):
    """Serialized with the rounded ``percent_1dp`` of ``score``."""

    derived = {"percent_1dp": lambda self: percent_1dp(self.score)}


class CurveRecord(DictSerializable):
    """
    The precision/recall curve of one object at one threshold.

    Parameters
    ----------
    kind: PoseErrorKind
        The function the threshold applies to.
    obj_id: int
        The object.
    threshold: float
        The normalized threshold (see ThresholdGrid).
    recalls, precisions: List[float]
        The curve points in sweep order.
    ap: float
        101-point interpolated AP of the curve.

    """

    typ = "pr_curve"

    def __init__(self, kind, obj_id, threshold, recalls, precisions, ap):
        self.kind = _kind_key(kind)
        self.obj_id = int(obj_id)
        self.threshold = float(threshold)
        if len(recalls) != len(precisions):
            raise ValidationError("A curve needs as many recalls as precisions")
        self.recalls = [float(r) for r in recalls]
        self.precisions = [float(p) for p in precisions]
        self.ap = float(ap)


class DatasetScore(_Scored):
    """
    The score of one dataset.

    Parameters
    ----------
    name: str
        Dataset name (its directory name).
    task: Task
        The evaluated task.
    scores: Dict[str, float]
        AR or AP per pose-error function, keyed by the function's value (``"mssd"``...).
    score: float
        AR_d or AP_d, the mean of `scores`.
    num_gt: int
        Eligible ground-truth instances evaluated.
    num_images: int
        Images evaluated.
    mean_time: float, optional
        Mean time per image in seconds; None when the submission reports no times.
    per_object: Dict[str, Dict[str, float]], optional
        Per object id (as a string), the score per pose-error function.
    curves: List[CurveRecord], optional
        Precision/recall curves (detection tasks).

    """

    typ = "dataset_score"

    def __init__(self, name, task, scores, score, num_gt, num_images, mean_time=None,
                 per_object=None, curves=None):
        self.name = name
        self._task = None
        self.task = task
        self.scores = {_kind_key(kind): float(value) for kind, value in scores.items()}
        self.score = float(score)
        self.num_gt = int(num_gt)
        self.num_images = int(num_images)
        self.mean_time = None if mean_time is None else float(mean_time)
        self.per_object = {str(obj_id): {_kind_key(k): float(v) for k, v in values.items()}
                           for obj_id, values in (per_object or {}).items()}
        self.curves = list(curves or [])

    @property
    def task(self) -> Task:
        """The evaluated task."""
        return self._task

    @task.setter
    def task(self, task):
        self._task = Task.get_enum(task)


class ScoreReport(_Scored):
    """
    The scores of a submission over one or more datasets.

    Parameters
    ----------
    task: Task
        The evaluated task.
    datasets: List[DatasetScore]
        Per-dataset scores, in evaluation order.
    score: float
        The overall AR or AP, the mean of the per-dataset scores.
    mean_time: float, optional
        Mean over datasets of the mean time per image, in seconds.

    """

    typ = "score_report"

    def __init__(self, task, datasets, score, mean_time=None):
        self._task = None
        self.task = task
        self.datasets = list(datasets)
        self.score = float(score)
        self.mean_time = None if mean_time is None else float(mean_time)

    @classmethod
    def build(cls, task, datasets: List[DatasetScore]) -> "ScoreReport":
        """Aggregate per-dataset scores into a report."""
        if not datasets:
            raise EmptyInput("A report needs at least one dataset")
        score = math.fsum(d.score for d in datasets) / len(datasets)
        times = [d.mean_time for d in datasets]
        mean_time = None if None in times else math.fsum(times) / len(times)
        return cls(task, datasets, score, mean_time)

    @property
    def task(self) -> Task:
        """The evaluated task."""
        return self._task

    @task.setter
    def task(self, task):
        self._task = Task.get_enum(task)

    @property
    def score_name(self) -> str:
        """AR or AP."""
        return self._task.score_name

    def dataset(self, name: str) -> Optional[DatasetScore]:
        """The score of the dataset called `name`, if evaluated."""
        return next((d for d in self.datasets if d.name == name), None)

    def summary(self) -> Dict[str, str]:
        """Rounded percentages per dataset, plus the overall score under ``"overall"``."""
        table = {d.name: percent_1dp(d.score) for d in self.datasets}
        table["overall"] = percent_1dp(self.score)
        return table
