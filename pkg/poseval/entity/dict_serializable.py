from abc import ABC
from logging import getLogger
from typing import Callable, Dict

import inspect

logger = getLogger(__name__)


class DictSerializable(ABC):
    """
    A base class for value objects that can be represented as a dictionary and serialized.

    Subclasses set ``typ`` to a unique string, accept every serialized field as a keyword
    argument of ``__init__`` and store it under the same name (optionally behind a leading
    underscore for validated properties).

    ``derived`` maps the names of read-only fields to functions computing them from the
    object.  They are written by `as_dict` for the benefit of readers of the serialized
    form, and dropped again by `from_dict`.
    """

    typ = NotImplemented
    derived: Dict[str, Callable] = {}

    @classmethod
    def from_dict(cls, d):
        """
        Reconstitute the object from a dictionary.

        Parameters
        ----------
        d: dict
            The object as a dictionary of key-value pairs that correspond to the object's fields.

        Returns
        -------
        DictSerializable
            The deserialized object.

        """
        spec = inspect.getfullargspec(cls.__init__)
        accepted = set(spec.args + spec.kwonlyargs)
        kwargs = {}
        for name, arg in d.items():
            if name in accepted:
                kwargs[name] = arg
            elif name != 'type' and name not in cls.derived:
                logger.warning('Ignoring unexpected field of {}: {}'.format(cls.__name__, name))
        return cls(**kwargs)

    def as_dict(self):
        """
        Convert the object to a dictionary.

        Returns
        -------
        dict
            The fields of the object, its derived fields and its ``type``.

        """
        attributes = {k.lstrip('_'): getattr(self, k.lstrip('_')) for k in vars(self)}
        for name, compute in self.derived.items():
            attributes[name] = compute(self)
        attributes["type"] = self.typ
        return attributes

    def __repr__(self):
        return "{}({})".format(type(self).__name__, self.as_dict())

    def __eq__(self, other):
        if isinstance(other, DictSerializable):
            return self.as_dict() == other.as_dict()
        return False

    __hash__ = None
