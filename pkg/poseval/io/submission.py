"""
Submission files.

A pose submission is a CSV file with the header ``scene_id,im_id,obj_id,score,R,t,time``
where ``R`` holds the 9 row-major rotation entries and ``t`` the 3 translation entries
(millimeters), space-separated inside one field.  A 2D detection submission has the
header ``scene_id,im_id,obj_id,score,bbox,time`` with ``bbox`` = ``x y w h`` in pixels.
``time`` is the run time of the whole image in seconds; a negative time means
"not reported".
"""
import csv
import io
import math
from logging import getLogger
from typing import List, Sequence, Union

from poseval.enumeration import Task
from poseval.exceptions import BadFieldCount, BadHeader, BadRotation, InvalidRotation, \
    NonFiniteScore, SubmissionErrors, ValidationError
from poseval.geom import RigidPose
from poseval.metrics.instances import Detection2D, PoseEstimate
from poseval.pose_error.box import Box2D

logger = getLogger(__name__)

POSE_HEADER = ("scene_id", "im_id", "obj_id", "score", "R", "t", "time")
BOX_HEADER = ("scene_id", "im_id", "obj_id", "score", "bbox", "time")

Prediction = Union[PoseEstimate, Detection2D]


def header_for(task) -> Sequence[str]:
    """The column names a submission for `task` must start with."""
    return POSE_HEADER if Task.get_enum(task).is_pose_task else BOX_HEADER


def _integer(name: str, text: str, line: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValidationError("{} is not an integer: {!r}".format(name, text), line=line)


def _number(name: str, text: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ValidationError("{} is not a number: {!r}".format(name, text), line=line)


def _vector(name: str, text: str, size: int, line: int) -> List[float]:
    words = text.split()
    if len(words) != size:
        raise BadFieldCount("{} needs {} numbers, got {}".format(name, size, len(words)),
                            line=line)
    values = [_number(name, word, line) for word in words]
    if not all(math.isfinite(v) for v in values):
        raise ValidationError("{} must be finite: {!r}".format(name, text), line=line)
    return values


def _parse_row(fields: List[str], pose_task: bool, line: int) -> Prediction:
    scene_id = _integer("scene_id", fields[0], line)
    im_id = _integer("im_id", fields[1], line)
    obj_id = _integer("obj_id", fields[2], line)
    score = _number("score", fields[3], line)
    if not math.isfinite(score):
        raise NonFiniteScore("score must be finite, got {!r}".format(fields[3]), line=line)
    time_s = _number("time", fields[-1], line)
    if not math.isfinite(time_s):
        raise ValidationError("time must be finite, got {!r}".format(fields[-1]), line=line)
    if not pose_task:
        box = Box2D.from_list(_vector("bbox", fields[4], 4, line))
        return Detection2D(scene_id, im_id, obj_id, box, score, time_s)
    rotation = _vector("R", fields[4], 9, line)
    translation = _vector("t", fields[5], 3, line)
    try:
        pose = RigidPose.from_flat(rotation, translation)
    except BadRotation as err:
        raise InvalidRotation(err.message, line=line)
    return PoseEstimate(scene_id, im_id, obj_id, pose, score, time_s)


def parse_submission_csv(data: bytes, task) -> List[Prediction]:
    """
    Parse a submission for `task`.

    Every row is checked; all problems are reported together.

    Returns
    -------
    List[Union[PoseEstimate, Detection2D]]
        Predictions in file order.

    Raises
    ------
    BadHeader
        If the header does not match the task.
    SubmissionErrors
        Listing every invalid row (``BadFieldCount``, ``NonFiniteScore``,
        ``InvalidRotation``...) with its line number.

    """
    pose_task = Task.get_enum(task).is_pose_task
    expected = list(header_for(task))
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as err:
        raise ValidationError("Submission is not UTF-8: {}".format(err))

    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != expected:
        raise BadHeader("Expected header {!r}, got {!r}".format(
            ",".join(expected), None if header is None else ",".join(header)), line=1)

    predictions, problems = [], []
    for fields in reader:
        line = reader.line_num
        if not fields:
            continue
        if len(fields) != len(expected):
            problems.append(BadFieldCount("Expected {} fields, got {}".format(
                len(expected), len(fields)), line=line))
            continue
        try:
            predictions.append(_parse_row(fields, pose_task, line))
        except ValidationError as err:
            if err.line is None:
                err.line = line
            problems.append(err)
    if problems:
        raise SubmissionErrors(problems)
    logger.debug("Parsed {} submission rows".format(len(predictions)))
    return predictions


def write_submission_csv(predictions: Sequence[Prediction], task) -> bytes:
    """Serialize predictions with shortest round-trip floats and LF line endings."""
    pose_task = Task.get_enum(task).is_pose_task
    buffer = io.StringIO(newline="")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header_for(task))
    for p in predictions:
        if pose_task:
            geometry = [" ".join(repr(float(v)) for v in p.pose.rotation.reshape(-1)),
                        " ".join(repr(float(v)) for v in p.pose.translation)]
        else:
            geometry = [" ".join(repr(v) for v in p.bbox.as_list())]
        writer.writerow([p.scene_id, p.im_id, p.obj_id, repr(p.score)] + geometry
                        + [repr(p.time_s)])
    return buffer.getvalue().encode("utf-8")
