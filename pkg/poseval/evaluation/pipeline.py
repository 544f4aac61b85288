"""
Scoring of a submission on one or more datasets.

Work is split into one case per (image, object).  Cases are computed by a pool of worker
threads and reduced in a fixed order, so that the scores do not depend on the number of
workers.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from logging import getLogger
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from toolz import groupby

from poseval.enumeration import PoseErrorKind, Task
from poseval.evaluation.settings import EvalSettings
from poseval.exceptions import NonPositiveDepth, UnknownObject, ValidationError
from poseval.geom import SymmetrySet, discretize_symmetries
from poseval.io.dataset import BopDataset
from poseval.metrics import MAX_DETECTIONS, CurveRecord, DatasetScore, Detection2D, \
    DetectionCase, GtInstance, LocalizationCase, PoseEstimate, ScoreReport, TargetList, \
    ap_dataset, ap_dataset_6d, ap_from_curve, ap_object, ar_dataset, average_recall, \
    build_pr_curve, dataset_time, image_times
from poseval.pose_error import iou_2d, mspd, mssd, vsd_from_depth
from poseval.render import DepthMap, rasterize_depth

logger = getLogger(__name__)

ImageKey = Tuple[int, int]
CaseKey = Tuple[int, int, int]


def _run(jobs: int, work: Callable, items: Sequence[tuple]) -> List:
    """Apply `work` to every item, results in item order."""
    if jobs == 1 or len(items) < 2:
        return [work(*item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda item: work(*item), items))


def _most_confident(predictions: Sequence, count: int) -> List:
    """The `count` most confident predictions (ties at the cut kept), in input order."""
    if count <= 0:
        return []
    if len(predictions) <= count:
        return list(predictions)
    cutoff = sorted((p.score for p in predictions), reverse=True)[count - 1]
    return [p for p in predictions if p.score >= cutoff]


def _capped_per_image(predictions: Sequence, count: int) -> List:
    """
    Per image, the first `count` predictions by descending score then input order.

    The objects of an image share its budget.  The result keeps input order.
    """
    by_image = groupby(lambda i: predictions[i].image, range(len(predictions)))
    kept = set()
    for rows in by_image.values():
        kept.update(sorted(rows, key=lambda i: (-predictions[i].score, i))[:count])
    return [p for i, p in enumerate(predictions) if i in kept]


class _DatasetContext(object):
    """Everything the workers share for one dataset, loaded before they start."""

    def __init__(self, dataset: BopDataset, targets: TargetList, predictions: Sequence,
                 settings: EvalSettings):
        self.dataset = dataset
        self.targets = targets
        self.settings = settings
        info = dataset.models_info

        images = targets.images()
        self.gts: Dict[ImageKey, List[GtInstance]] = {}
        for scene_id, im_id in images:
            scene = dataset.gt(scene_id)
            if im_id not in scene:
                raise ValidationError("Targeted image {} of scene {} has no annotations".format(
                    im_id, scene_id))
            self.gts[(scene_id, im_id)] = scene[im_id]

        used = {g.obj_id for gts in self.gts.values() for g in gts}
        used.update(targets.object_ids())
        unknown = sorted({p.obj_id for p in predictions} - set(info))
        if unknown:
            raise UnknownObject("Predictions refer to objects {} unknown to dataset {}".format(
                unknown, dataset.name))
        unknown = sorted(used - set(info))
        if unknown:
            raise UnknownObject("Annotations refer to objects {} unknown to dataset {}".format(
                unknown, dataset.name))

        self.predictions: Dict[CaseKey, List] = groupby(
            lambda p: (p.scene_id, p.im_id, p.obj_id),
            [p for p in predictions if p.image in targets])
        skipped = sum(1 for p in predictions if p.image not in targets)
        if skipped:
            logger.warning("Ignoring {} prediction(s) for images outside the target list of {}"
                           .format(skipped, dataset.name))

        self.diameters = {obj_id: info[obj_id].diameter for obj_id in info}
        self._symmetries: Dict[int, SymmetrySet] = {}
        self._vertices: Dict[int, np.ndarray] = {}
        self.used_objects = sorted(used | {key[2] for key in self.predictions})

    def load_models(self, need_meshes: bool):
        """Discretize symmetries and load meshes of every used object."""
        info = self.dataset.models_info
        for obj_id in self.used_objects:
            self._symmetries[obj_id] = discretize_symmetries(
                info[obj_id].symmetries, info[obj_id].diameter, self.settings.max_sym_step)
            if need_meshes:
                self._vertices[obj_id] = self.dataset.mesh(obj_id).vertices

    def symmetries(self, obj_id: int) -> SymmetrySet:
        """Discretized symmetries of one object."""
        return self._symmetries[obj_id]

    def vertices(self, obj_id: int) -> np.ndarray:
        """Model vertices of one object."""
        return self._vertices[obj_id]

    def estimates(self, image: ImageKey, obj_id: int) -> List:
        """Predictions of one object in one image, in file order."""
        return self.predictions.get((image[0], image[1], obj_id), [])

    def mean_time(self, predictions: Sequence) -> Optional[float]:
        """Mean run time per image, None unless every evaluated prediction reports one."""
        rows = [(p.image, p.time_s) for p in predictions if p.image in self.targets]
        if not rows or any(t < 0 for _, t in rows):
            return None
        return dataset_time(image_times(rows))


def _mspd_or_inf(est, gt, vertices, symmetries, intrinsics) -> float:
    try:
        return mspd(est, gt, vertices, symmetries, intrinsics)
    except NonPositiveDepth:
        # an estimate reaching behind the camera has no projection
        return math.inf


def _pose_errors(context: _DatasetContext, kind: PoseErrorKind, image: ImageKey, obj_id: int,
                 estimates: Sequence[PoseEstimate], gts: Sequence[GtInstance]) -> np.ndarray:
    """n_estimates x n_instances matrix of MSSD or MSPD."""
    vertices, symmetries = context.vertices(obj_id), context.symmetries(obj_id)
    if kind is PoseErrorKind.MSSD:
        def error(est, gt):
            return mssd(est.pose, gt.pose, vertices, symmetries)
    else:
        intrinsics = context.dataset.camera(*image).intrinsics

        def error(est, gt):
            return _mspd_or_inf(est.pose, gt.pose, vertices, symmetries, intrinsics)
    return np.array([[error(est, gt) for gt in gts] for est in estimates],
                    dtype=np.float64).reshape(len(estimates), len(gts))


def _vsd_errors(context: _DatasetContext, image: ImageKey, obj_id: int,
                estimates: Sequence[PoseEstimate], gts: Sequence[GtInstance],
                taus: Sequence[float]) -> np.ndarray:
    """n_estimates x n_instances x n_taus VSD, every pose rendered once."""
    errors = np.ones((len(estimates), len(gts), len(taus)))
    if not len(estimates) or not len(gts):
        return errors
    intrinsics = context.dataset.camera(*image).intrinsics
    scene = context.dataset.depth(*image)
    mesh = context.dataset.mesh(obj_id)
    rendered_gt = [rasterize_depth(mesh, gt.pose, intrinsics) for gt in gts]
    for row, est in enumerate(estimates):
        rendered: DepthMap = rasterize_depth(mesh, est.pose, intrinsics)
        for col, depth_gt in enumerate(rendered_gt):
            errors[row, col] = vsd_from_depth(rendered, depth_gt, scene,
                                              context.settings.vsd_delta, taus)
    return errors


def _localization_case(context: _DatasetContext, image: ImageKey,
                       obj_id: int) -> Dict[PoseErrorKind, LocalizationCase]:
    gts = [g for g in context.gts[image] if g.obj_id == obj_id and g.eligible]
    estimates = _most_confident(context.estimates(image, obj_id), len(gts))
    scores = [est.score for est in estimates]
    width = context.dataset.camera(*image).intrinsics.width
    diameter = context.diameters[obj_id]
    cases = {}
    for kind in Task.LOCALIZATION_6D.error_kinds:
        thresholds, taus = context.settings.grid(kind).resolve(diameter=diameter,
                                                               image_width=width)
        if kind is PoseErrorKind.VSD:
            errors = _vsd_errors(context, image, obj_id, estimates, gts, taus)
        else:
            errors = _pose_errors(context, kind, image, obj_id, estimates, gts)
        cases[kind] = LocalizationCase(image, obj_id, scores, errors, thresholds)
    return cases


def evaluate_localization(dataset: BopDataset, targets: TargetList,
                          estimates: Sequence[PoseEstimate],
                          settings: Optional[EvalSettings] = None) -> DatasetScore:
    """
    Average recall of a 6D localization submission on one dataset.

    Every targeted (image, object) pair is one case; its estimates are matched to its
    eligible instances at every setting of the VSD, MSSD and MSPD grids.  Recalls pool
    the matched counts of the whole dataset.

    Parameters
    ----------
    dataset: BopDataset
        The dataset.
    targets: TargetList
        The evaluated images and objects.
    estimates: Sequence[PoseEstimate]
        The submission rows of this dataset.
    settings: EvalSettings, optional
        Grids, tolerances and worker count.

    Returns
    -------
    DatasetScore
        AR per function, their mean, and the per-object recalls.

    """
    settings = settings or EvalSettings()
    context = _DatasetContext(dataset, targets, estimates, settings)
    context.load_models(need_meshes=True)
    ignored = sum(len(rows) for (s, i, o), rows in context.predictions.items()
                  if targets.inst_count(s, i, o) is None)
    if ignored:
        logger.warning("Ignoring {} estimate(s) of objects not targeted in their image".format(
            ignored))

    items = [(context, (s, i), o) for s, i, o, _ in targets]
    logger.debug("Scoring {} localization cases of {}".format(len(items), dataset.name))
    results = _run(settings.jobs, _localization_case, items)

    kinds = Task.LOCALIZATION_6D.error_kinds
    totals = {kind: [0] * settings.grid(kind).size for kind in kinds}
    per_object: Dict[int, Dict[PoseErrorKind, List[int]]] = {}
    object_gt: Dict[int, int] = {}
    num_gt = 0
    for cases in results:
        some_case = cases[kinds[0]]
        num_gt += some_case.num_gt
        object_gt[some_case.obj_id] = object_gt.get(some_case.obj_id, 0) + some_case.num_gt
        for kind in kinds:
            counts = cases[kind].matched_counts(kind)
            totals[kind] = [a + b for a, b in zip(totals[kind], counts)]
            mine = per_object.setdefault(some_case.obj_id, {}).setdefault(
                kind, [0] * len(counts))
            per_object[some_case.obj_id][kind] = [a + b for a, b in zip(mine, counts)]

    scores = {kind: average_recall(totals[kind], num_gt) for kind in kinds}
    breakdown = {obj_id: {kind: average_recall(counts[kind], object_gt[obj_id])
                          for kind in kinds}
                 for obj_id, counts in sorted(per_object.items()) if object_gt[obj_id] > 0}
    return DatasetScore(dataset.name, Task.LOCALIZATION_6D, scores,
                        ar_dataset(scores[PoseErrorKind.VSD], scores[PoseErrorKind.MSSD],
                                   scores[PoseErrorKind.MSPD]),
                        num_gt=num_gt, num_images=len(targets),
                        mean_time=context.mean_time(estimates), per_object=breakdown)


def _detection_case(context: _DatasetContext, kinds: Sequence[PoseErrorKind], image: ImageKey,
                    obj_id: int) -> Dict[PoseErrorKind, DetectionCase]:
    gts = [g for g in context.gts[image] if g.obj_id == obj_id]
    predictions = context.estimates(image, obj_id)
    scores = [p.score for p in predictions]
    eligible = [g.eligible for g in gts]
    width = context.dataset.camera(*image).intrinsics.width
    cases = {}
    for kind in kinds:
        thresholds, _ = context.settings.grid(kind).resolve(
            diameter=context.diameters[obj_id], image_width=width)
        if kind is PoseErrorKind.IOU2D:
            errors = np.array([[iou_2d(p.bbox, g.bbox) for g in gts] for p in predictions],
                              dtype=np.float64).reshape(len(predictions), len(gts))
        else:
            errors = _pose_errors(context, kind, image, obj_id, predictions, gts)
        cases[kind] = DetectionCase(image, obj_id, scores, errors, eligible, thresholds)
    return cases


def _evaluate_detection(task: Task, dataset: BopDataset, targets: TargetList,
                        predictions: Sequence, settings: Optional[EvalSettings],
                        with_curves: bool) -> DatasetScore:
    settings = settings or EvalSettings()
    kinds = task.error_kinds
    evaluated = _capped_per_image(predictions, MAX_DETECTIONS)
    if len(evaluated) < len(predictions):
        logger.warning("Ignoring {} detection(s) beyond the {} most confident of their image"
                       .format(len(predictions) - len(evaluated), MAX_DETECTIONS))
    context = _DatasetContext(dataset, targets, evaluated, settings)
    context.load_models(need_meshes=task.is_pose_task)

    items = []
    for image in targets.images():
        objects = {g.obj_id for g in context.gts[image]}
        objects.update(o for s, i, o in context.predictions if (s, i) == image)
        items.extend((context, kinds, image, obj_id) for obj_id in sorted(objects))
    logger.debug("Scoring {} detection cases of {}".format(len(items), dataset.name))
    results = _run(settings.jobs, _detection_case, items)

    by_object = groupby(lambda cases: cases[kinds[0]].obj_id, results)
    per_object: Dict[int, Dict[PoseErrorKind, float]] = {}
    curves = []
    num_gt = 0
    for obj_id in sorted(by_object):
        object_gt = sum(cases[kinds[0]].num_gt for cases in by_object[obj_id])
        if object_gt == 0:
            logger.debug("Object {} has no eligible instance in {}; not averaged".format(
                obj_id, dataset.name))
            continue
        num_gt += object_gt
        per_object[obj_id] = {}
        for kind in kinds:
            grid = settings.grid(kind)
            cases = [c[kind] for c in by_object[obj_id]]
            aps = []
            for index, threshold in enumerate(grid.thresholds):
                curve = build_pr_curve(cases, index, kind)
                aps.append(ap_from_curve(curve))
                if with_curves:
                    curves.append(CurveRecord(kind, obj_id, threshold, curve.recalls.tolist(),
                                              curve.precisions.tolist(), aps[-1]))
            per_object[obj_id][kind] = ap_object(aps)

    scores = {kind: ap_dataset([per_object[o][kind] for o in sorted(per_object)])
              for kind in kinds}
    if task is Task.DETECTION_6D:
        score = ap_dataset_6d(scores[PoseErrorKind.MSSD], scores[PoseErrorKind.MSPD])
    else:
        score = scores[PoseErrorKind.IOU2D]
    return DatasetScore(dataset.name, task, scores, score, num_gt=num_gt,
                        num_images=len(targets), mean_time=context.mean_time(predictions),
                        per_object=per_object, curves=curves if with_curves else None)


def evaluate_detection_6d(dataset: BopDataset, targets: TargetList,
                          estimates: Sequence[PoseEstimate],
                          settings: Optional[EvalSettings] = None,
                          with_curves: bool = True) -> DatasetScore:
    """
    Average precision of a 6D detection submission on one dataset.

    The estimates of every object in every targeted image are labeled at each MSSD and
    MSPD threshold, the 100 most confident per image; the per-object AP averages the
    thresholds, the dataset AP averages the objects that have eligible instances, and the
    6D detection score is the mean of the MSSD and MSPD APs.
    """
    return _evaluate_detection(Task.DETECTION_6D, dataset, targets, estimates, settings,
                               with_curves)


def evaluate_detection_2d(dataset: BopDataset, targets: TargetList,
                          detections: Sequence[Detection2D],
                          settings: Optional[EvalSettings] = None,
                          with_curves: bool = True) -> DatasetScore:
    """Average precision of a 2D detection submission against the amodal boxes."""
    return _evaluate_detection(Task.DETECTION_2D, dataset, targets, detections, settings,
                               with_curves)


def evaluate_dataset(task, dataset: BopDataset, targets: TargetList, predictions: Sequence,
                     settings: Optional[EvalSettings] = None) -> DatasetScore:
    """Score one dataset for `task`."""
    task = Task.get_enum(task)
    expected = PoseEstimate if task.is_pose_task else Detection2D
    wrong = next((p for p in predictions if not isinstance(p, expected)), None)
    if wrong is not None:
        raise ValidationError("A {} submission must hold {} rows, got {}".format(
            task.value, expected.__name__, type(wrong).__name__))
    if task is Task.LOCALIZATION_6D:
        return evaluate_localization(dataset, targets, predictions, settings)
    if task is Task.DETECTION_6D:
        return evaluate_detection_6d(dataset, targets, predictions, settings)
    return evaluate_detection_2d(dataset, targets, predictions, settings)


def evaluate(task, runs: Sequence[Tuple[BopDataset, TargetList, Sequence]],
             settings: Optional[EvalSettings] = None) -> ScoreReport:
    """
    Score a submission over several datasets.

    Parameters
    ----------
    task: Task
        The task.
    runs: Sequence[Tuple[BopDataset, TargetList, Sequence]]
        Per dataset: the dataset, its target list and its predictions.
    settings: EvalSettings, optional
        Shared by every dataset.

    Returns
    -------
    ScoreReport
        Per-dataset scores in the order given, and their mean.

    """
    task = Task.get_enum(task)
    scores = []
    for dataset, targets, predictions in runs:
        logger.info("Evaluating {} on {} ({} images)".format(task.value, dataset.name,
                                                            len(targets)))
        scores.append(evaluate_dataset(task, dataset, targets, predictions, settings))
    return ScoreReport.build(task, scores)
