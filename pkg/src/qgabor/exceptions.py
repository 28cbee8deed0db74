"""Exception hierarchy shared by the library and the CLI."""


class QGaborError(Exception):
    """Base class for all library errors."""


class PreconditionError(QGaborError, ValueError):
    """An operation was called outside its mathematical preconditions."""


class GeometryMismatchError(PreconditionError):
    pass


class ZeroWindowError(PreconditionError):
    pass


class ModeError(PreconditionError):
    """The operation needs a different measure mode."""


class MaskMeasureError(PreconditionError):
    """A region mask has a measure outside the admissible range."""


class NormalizationError(PreconditionError):
    pass


class NoAdmissibleRadiusError(PreconditionError):
    """No ball radius with measure below 1 exists on the grid."""


class NotAnnihilatingError(PreconditionError):
    """The estimated operator norm is not below 1."""


class SupportError(PreconditionError):
    """A window is nonzero outside the declared support ball."""

    def __init__(self, message, offending_cells=()):
        super().__init__(message)
        self.offending_cells = list(offending_cells)


class CodecError(QGaborError, ValueError):
    """Base class for malformed file contents."""


class BadMagicError(CodecError):
    pass


class HeaderError(CodecError):
    pass


class TruncatedPayloadError(CodecError):
    pass


class SizeMismatchError(CodecError):
    pass
