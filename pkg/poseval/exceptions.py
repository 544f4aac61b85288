"""Exceptions raised by poseval."""
from typing import Optional


class PosevalError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(PosevalError, ValueError):
    """
    An input violates a documented precondition.

    Located errors carry the offending file and (1-based) line number, when known.

    Parameters
    ----------
    message: str
        Description of the problem.
    path: str, optional
        The file the problem was found in.
    line: int, optional
        The line of `path` the problem was found on.

    """

    def __init__(self, message: str, *, path: Optional[str] = None, line: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.path = path
        self.line = line

    def located(self, path: str) -> "ValidationError":
        """Attach a file path to this error and return it."""
        if self.path is None:
            self.path = path
        return self

    def __str__(self):
        if self.path is not None and self.line is not None:
            return "{}:{}: {}".format(self.path, self.line, self.message)
        if self.path is not None:
            return "{}: {}".format(self.path, self.message)
        if self.line is not None:
            return "line {}: {}".format(self.line, self.message)
        return self.message


# geometry
class NonPositiveDepth(ValidationError):
    """A point that must be projected lies at or behind the camera plane."""


class InvalidSpec(ValidationError):
    """A symmetry annotation cannot be discretized."""


class NonUnitAxis(InvalidSpec):
    """A continuous symmetry axis does not have unit norm."""


class BadRotation(ValidationError):
    """A rotation matrix is not orthonormal with determinant +1."""


class InvalidRotation(BadRotation):
    """A submission row carries a rotation that is not a valid rotation matrix."""


class DimensionMismatch(ValidationError):
    """Two images that must be aligned differ in size."""


class EmptyVertexSet(ValidationError):
    """A pose error was requested over an empty set of model points."""


# aggregation
class EmptyGroundTruth(ValidationError):
    """No eligible ground-truth instance exists to compute a recall."""


class EmptyInput(ValidationError):
    """An average was requested over an empty collection."""


# file formats
class MalformedHeader(ValidationError):
    """A PLY header cannot be understood."""


class IndexOutOfRange(ValidationError):
    """A face refers to a vertex that does not exist."""


class UnsupportedEncoding(ValidationError):
    """A file uses an encoding this package does not read."""


class MissingDiameter(ValidationError):
    """An object in models_info has no usable diameter."""


class BadSymmetryMatrix(ValidationError):
    """A discrete symmetry is not a rigid 4x4 transform."""


class LengthMismatch(ValidationError):
    """Two files that must list the same instances have different lengths."""


class DuplicateTarget(ValidationError):
    """A target list names the same (scene, image, object) twice."""


class NonPositiveCount(ValidationError):
    """A target list asks for zero or fewer instances."""


class BadHeader(ValidationError):
    """A submission file does not start with the header its task requires."""


class BadFieldCount(ValidationError):
    """A submission row or field holds the wrong number of values."""


class NonFiniteScore(ValidationError):
    """A submission row carries a NaN or infinite number."""


class UnsupportedBitDepth(ValidationError):
    """A depth image is not a 16-bit single channel PNG."""


class DecodeError(ValidationError):
    """An image cannot be decoded."""


class UnsupportedCameraModel(ValidationError):
    """A camera uses a projection model other than pinhole."""


class UnknownObject(ValidationError):
    """A submission refers to an object the dataset does not define."""


class MissingReport(ValidationError):
    """A report file to be rendered does not exist."""


class ConfigError(ValidationError):
    """A configuration value is invalid."""


class SubmissionErrors(ValidationError):
    """
    Every problem found while parsing a submission file.

    Parameters
    ----------
    problems: List[ValidationError]
        The located problems, in file order.

    """

    def __init__(self, problems, *, path: Optional[str] = None):
        self.problems = list(problems)
        super().__init__("{} invalid submission row(s)".format(len(self.problems)), path=path)

    def located(self, path: str) -> "SubmissionErrors":
        """Attach a file path to this error and to every problem it holds."""
        super().located(path)
        for problem in self.problems:
            problem.located(path)
        return self

    def __str__(self):
        lines = [super().__str__()]
        lines.extend(str(problem) for problem in self.problems)
        return "\n".join(lines)
