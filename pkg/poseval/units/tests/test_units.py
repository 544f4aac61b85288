"""Tests of the length-unit helpers."""
import pytest

from poseval.units import parse_units, convert_units, length_scale, parse_length, \
    UndefinedUnitError, IncompatibleUnitsError


def test_parse_expected():
    """Test that common length spellings parse."""
    for unit in ["mm", "millimeter", "cm", "m", "meter", "inch", "um"]:
        parse_units(unit)
    assert parse_units("") == 'dimensionless'
    assert parse_units(None) is None


def test_parse_unexpected():
    """Test that gibberish does not parse."""
    for unit in ["gibberish", 5]:
        with pytest.raises(UndefinedUnitError):
            parse_units(unit)


def test_length_scale():
    """Scales are expressed in millimeters per unit."""
    assert length_scale("mm") == 1.0
    assert length_scale("m") == pytest.approx(1000.0)
    assert length_scale("cm") == pytest.approx(10.0)
    with pytest.raises(IncompatibleUnitsError):
        length_scale("second")


def test_parse_length():
    """Bare numbers are millimeters; quantity strings are converted."""
    assert parse_length(15) == 15.0
    assert parse_length("15") == 15.0
    assert parse_length("1.5 cm") == pytest.approx(15.0)
    assert convert_units(convert_units(1, "m", "mm"), "mm", "m") == 1
    with pytest.raises(TypeError):
        parse_length(True)
    with pytest.raises(TypeError):
        parse_length([15])
