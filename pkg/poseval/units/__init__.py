"""Length units."""
# flake8: noqa
from .impl import *
