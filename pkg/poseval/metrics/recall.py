"""Average recall of 6D localization."""
import math
from typing import Sequence

from poseval.exceptions import EmptyGroundTruth, EmptyInput


def average_recall(matched_counts: Sequence[int], num_gt: int) -> float:
    """
    Mean recall over the settings of a threshold grid.

    Counts are pooled over the whole dataset before dividing; recalls are not averaged
    per object first.

    Parameters
    ----------
    matched_counts: Sequence[int]
        Correctly matched instances of the dataset, one count per (threshold, tolerance)
        setting.
    num_gt: int
        Eligible ground-truth instances of the dataset.

    Raises
    ------
    EmptyGroundTruth
        If `num_gt` is zero.

    """
    if num_gt <= 0:
        raise EmptyGroundTruth("No eligible ground-truth instance to compute a recall over")
    if not matched_counts:
        raise EmptyInput("A threshold grid has at least one setting")
    return math.fsum(count / num_gt for count in matched_counts) / len(matched_counts)


def ar_dataset(ar_vsd: float, ar_mssd: float, ar_mspd: float) -> float:
    """AR of one dataset: the mean of the three pose-error ARs."""
    return math.fsum([ar_vsd, ar_mssd, ar_mspd]) / 3


def ar_overall(per_dataset: Sequence[float]) -> float:
    """The headline AR: the mean over datasets."""
    per_dataset = list(per_dataset)
    if not per_dataset:
        raise EmptyInput("Cannot average an empty list of per-dataset ARs")
    return math.fsum(per_dataset) / len(per_dataset)
