from json import JSONEncoder

import numpy as np

from poseval.entity.dict_serializable import DictSerializable
from poseval.enumeration.base_enumeration import BaseEnumeration


class PosevalEncoder(JSONEncoder):
    """Rules for encoding poseval objects as json strings."""

    def default(self, o):
        """Default encoder implementation."""
        if isinstance(o, DictSerializable):
            return o.as_dict()
        elif isinstance(o, BaseEnumeration):
            return o.value
        elif isinstance(o, np.integer):
            return int(o)
        elif isinstance(o, np.floating):
            return float(o)
        elif isinstance(o, np.ndarray):
            return o.tolist()
        else:
            return JSONEncoder.default(self, o)
