class CentreError(Exception):
    """Base class for every error raised by the library."""


class InputError(CentreError):
    pass


class UnsupportedFieldError(InputError):
    pass


class DimensionMismatchError(InputError):
    pass


class NotInvertibleError(InputError):
    pass


class InvalidFrameError(InputError):
    pass


class InvalidFlagError(InputError):
    pass


class CatalogError(InputError):
    def __init__(self, message, entry=None, field=None, line=None):
        self.entry = entry
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append("line {}".format(line))
        if entry is not None:
            location.append("entry {}".format(entry))
        if field is not None:
            location.append("field '{}'".format(field))
        if location:
            message = "{}: {}".format(", ".join(location), message)
        super().__init__(message)


class CapacityError(CentreError):
    pass


class EnumerationTooLargeError(CapacityError):
    pass


class AmbientTooLargeError(CapacityError):
    pass


class PreconditionError(CentreError):
    pass


class IncompleteClosureError(PreconditionError):
    pass


class NotInLatticeError(PreconditionError):
    pass


class EmptyComplexError(PreconditionError):
    pass


class VerificationFailure(CentreError):
    """A checked statement did not hold. `verdicts` holds what was computed."""

    def __init__(self, message, verdicts=None):
        self.verdicts = dict(verdicts or {})
        super().__init__(message)


class OracleDisagreementError(VerificationFailure):
    """Two independent computations of the same verdict disagree."""
