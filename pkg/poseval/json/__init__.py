"""poseval JSON support, a drop-in replacement for json for poseval value objects.

This module provides :func:`dumps` / :func:`loads` (and the file versions :func:`dump` /
:func:`load`), backed by a module-level :class:`~poseval_json.PosevalJson` instance.
"""

from .poseval_encoder import PosevalEncoder  # noqa: F401
from .poseval_json import PosevalJson

__default = PosevalJson()


def loads(json_str, **kwargs):
    """Deserialize a json-formatted string into poseval objects."""
    return __default.loads(json_str, **kwargs)


def dumps(obj, **kwargs):
    """Serialize poseval objects into a deterministic json-formatted string."""
    return __default.dumps(obj, **kwargs)


def load(fp, **kwargs):
    """Load poseval objects from a file."""
    return __default.load(fp, **kwargs)


def dump(obj, fp, **kwargs):
    """Dump poseval objects to a file."""
    return __default.dump(obj, fp, **kwargs)
