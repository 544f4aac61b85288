"""Tests of the synthetic fixture dataset."""
import numpy as np

from poseval.demo import fixture_objects, make_fixture_dataset
from poseval.geom import mesh_diameter
from poseval.io import BopDataset, parse_submission_csv, parse_targets


def _tree(root):
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*"))
            if p.is_file()}


def test_same_seed_same_bytes(tmp_path):
    """Equal seeds write byte-identical trees; another seed writes other scenes."""
    first = make_fixture_dataset(7, tmp_path / "a")
    second = make_fixture_dataset(7, tmp_path / "b")
    assert _tree(first) == _tree(second)
    other = make_fixture_dataset(8, tmp_path / "c")
    assert _tree(other)["test/000001/scene_gt.json"] != _tree(first)["test/000001/scene_gt.json"]


def test_contents(tmp_path):
    """Objects, images, instances and submissions have the documented shape."""
    dataset = BopDataset(make_fixture_dataset(3, tmp_path))
    assert list(dataset.models_info) == [1, 2, 3]
    assert len(dataset.models_info[3].symmetries.discrete) == 7
    assert dataset.models_info[1].diameter == mesh_diameter(fixture_objects()[1][0])
    assert dataset.scene_ids() == [1, 2]

    images = [(s, i) for s in dataset.scene_ids() for i in dataset.gt(s)]
    assert len(images) >= 20
    counts = [len(dataset.gt(s)[i]) for s, i in images]
    assert min(counts) >= 1 and max(counts) <= 5
    fractions = [g.visib_fract for s, i in images for g in dataset.gt(s)[i]]
    assert all(0.0 <= f <= 1.0 for f in fractions)
    assert max(fractions) > 0.5

    depth = dataset.depth(1, 0)
    assert (depth.width, depth.height) == (320, 240)
    assert np.any(depth.values > 0)

    targets = parse_targets((dataset.root / "test_targets.json").read_bytes())
    eligible = sum(g.eligible for s, i in images for g in dataset.gt(s)[i])
    assert sum(count for *_, count in targets) == eligible
    perfect = parse_submission_csv(
        (dataset.root / "submissions" / "perfect-poses.csv").read_bytes(), "loc6d")
    assert len(perfect) == eligible
    boxes = parse_submission_csv(
        (dataset.root / "submissions" / "perfect-boxes.csv").read_bytes(), "det2d")
    assert len(boxes) == eligible


def test_perturbation_size(tmp_path):
    """Perturbed poses are shifted along one axis by about 0.3 of the diameter."""
    root = make_fixture_dataset(5, tmp_path)
    dataset = BopDataset(root)
    perfect = parse_submission_csv((root / "submissions" / "perfect-poses.csv").read_bytes(),
                                   "loc6d")
    perturbed = parse_submission_csv(
        (root / "submissions" / "perturbed-poses.csv").read_bytes(), "loc6d")
    for a, b in zip(perfect, perturbed):
        assert (a.scene_id, a.im_id, a.obj_id) == (b.scene_id, b.im_id, b.obj_id)
        assert np.array_equal(a.pose.rotation, b.pose.rotation)
        shift = b.pose.translation - a.pose.translation
        assert np.count_nonzero(shift) == 1
        diameter = dataset.models_info[a.obj_id].diameter
        assert abs(np.abs(shift).max() - 0.3 * diameter) < 1e-9
