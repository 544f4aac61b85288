"""Unit parsing and length conversion on top of pint."""
from typing import Union

import pint
from pint import UnitRegistry

# Lengths are carried in millimeters everywhere inside the package.
LENGTH_UNIT = "mm"

_ureg = UnitRegistry()

# Callers catch these rather than importing pint themselves.
IncompatibleUnitsError = pint.errors.DimensionalityError
UndefinedUnitError = pint.errors.UndefinedUnitError


def parse_units(units: Union[str, None]) -> Union[str, None]:
    """
    Parse a unit string into its standard string representation.

    Parameters
    ----------
    units: Union[str, None]
        The unit, e.g. ``'mm'``, ``'meter'``, ``'cm'``.

    Returns
    -------
    Union[str, None]
        The canonical pint spelling, ``'dimensionless'`` for an empty string.

    """
    if units is None:
        return None
    if not isinstance(units, str):
        raise UndefinedUnitError("Expected a unit string, got {!r}".format(units))
    return str(_ureg(units).units) if units else "dimensionless"


def convert_units(value: float, starting_unit: str, final_unit: str) -> float:
    """Express `value`, given in `starting_unit`, in `final_unit`."""
    return _ureg.Quantity(value, starting_unit).to(final_unit).magnitude


def length_scale(unit: str) -> float:
    """
    Return the number of millimeters in one `unit`.

    Raises IncompatibleUnitsError when `unit` is not a length.
    """
    return float(convert_units(1.0, unit, LENGTH_UNIT))


def parse_length(value: Union[str, int, float]) -> float:
    """
    Parse a length given as a bare number of millimeters or as a quantity string.

    Parameters
    ----------
    value: Union[str, int, float]
        ``15``, ``15.0``, ``"15 mm"`` and ``"1.5 cm"`` all mean fifteen millimeters.

    Returns
    -------
    float
        The length in millimeters.

    """
    if isinstance(value, bool):
        raise TypeError("A length cannot be a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise TypeError("A length must be a number or a string, not {}".format(type(value)))
    quantity = _ureg.Quantity(value)
    if quantity.dimensionless:
        return float(quantity.magnitude)
    return float(quantity.to(LENGTH_UNIT).magnitude)
