"""Dataset, submission and report files."""
# flake8: noqa
from .ply import parse_ply, write_ply
from .models_info import ModelsInfo, ObjectInfo, parse_models_info, write_models_info
from .scene import GtAnnotation, GtInfo, CameraInfo, ImageCamera, parse_scene_gt, \
    parse_scene_gt_info, parse_scene_camera, parse_camera_info, combine_gt, write_scene_gt, \
    write_scene_gt_info, write_scene_camera, write_camera_info
from .targets import parse_targets, write_targets
from .submission import parse_submission_csv, write_submission_csv, header_for
from .depth import load_depth, decode_depth, quantize_depth, write_depth
from .report import write_report, parse_report
from .dataset import BopDataset, read_file, parse_json_object, model_path, scene_path, \
    depth_path
