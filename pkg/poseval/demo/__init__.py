"""A seeded synthetic dataset for trying out and testing the evaluation."""
# flake8: noqa
from .shapes import box_mesh, merge_meshes, centered
from .fixtures import make_fixture_dataset, fixture_objects, fixture_camera, FIXTURE_NAME
