# flake8: noqa
from .depth_map import DepthMap, VisibilityMask
from .rasterizer import rasterize_depth, render_scene, ZNEAR
from .visibility import visibility_mask, DEFAULT_DELTA
