"""Base class for all enumerations."""
from enum import Enum


class BaseEnumeration(Enum):
    """Enumeration class that can convert between enumerations and their string values."""

    def __init__(self, *args):
        """Ensure that there are no duplicates in the enumeration."""
        cls = self.__class__
        if any(self.value == e.value for e in cls):
            raise ValueError("Duplicates not allowed in enumerated set of values {}".format(cls))
        if not isinstance(self.value, str):
            raise ValueError("All values of enum {} must be strings".format(cls))

    @classmethod
    def get_value(cls, name):
        """
        Return the string value associated with name.

        Parameters
        ----------
        name: Union[str, BaseEnumeration, None]
            A member, a member's value, or a member's name (case-insensitive).

        Returns
        -------
        Optional[str]
            The value of the matching member, or None if name is None.

        """
        member = cls.get_enum(name)
        return None if member is None else member.value

    @classmethod
    def get_enum(cls, name):
        """
        Return the enumeration member associated with name.

        Strings are compared against both the value and the name of each member,
        ignoring case, so that command-line spellings such as ``mssd`` and ``MSSD``
        both resolve.
        """
        if name is None:
            return None
        if isinstance(name, cls):
            return name
        if isinstance(name, str):
            key = name.strip().lower()
            for e in cls:
                if key == e.value.lower() or key == e.name.lower():
                    return e
        raise ValueError("'{}' is not a valid choice for enumeration {}".format(name, cls))
