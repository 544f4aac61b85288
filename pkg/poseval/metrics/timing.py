"""Run time per image."""
import math
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from toolz import reduceby

from poseval.exceptions import EmptyInput

ImageKey = Tuple[int, int]


def image_times(rows: Iterable[Tuple[ImageKey, float]]) -> Dict[ImageKey, float]:
    """
    Time per image from submission rows.

    Rows of one image may repeat its time or differ; the largest value is kept.
    """
    return reduceby(lambda row: row[0], lambda best, row: max(best, row[1]), rows,
                    -math.inf)


def dataset_time(times: Mapping[ImageKey, float]) -> float:
    """Mean time per image of one dataset, in seconds."""
    if not times:
        raise EmptyInput("No image times to average")
    return math.fsum(times[key] for key in sorted(times)) / len(times)


def mean_image_time(per_dataset: Sequence[Mapping[ImageKey, float]]) -> float:
    """Mean over datasets of the mean time per image."""
    if not per_dataset:
        raise EmptyInput("No datasets to average image times over")
    return math.fsum(dataset_time(times) for times in per_dataset) / len(per_dataset)
