"""Command-line front end."""
# flake8: noqa
from .config import EvalConfig, load_grid_file
