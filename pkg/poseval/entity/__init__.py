# flake8: noqa
from .dict_serializable import DictSerializable
