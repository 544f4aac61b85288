"""Poses, cameras, meshes and object symmetries."""
# flake8: noqa
from .pose import RigidPose, transform_points, is_rotation, ROTATION_TOLERANCE
from .camera import CameraIntrinsics, project
from .mesh import TriMesh, mesh_diameter
from .symmetry import ContinuousSymmetry, SymmetrySpec, SymmetrySet, discretize_symmetries
